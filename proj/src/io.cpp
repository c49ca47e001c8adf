#include "orofacial/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "orofacial/error.hpp"

namespace orofacial::io {

using nlohmann::json;

namespace {

constexpr std::string_view kFeatureTableKeyColumns = "subject,group,task,dim,repetition";
constexpr std::string_view kAnnotationHeader = "task,repetition,start,end";

std::string at_line(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& what) {
  throw Error(code, at_line(line, what));
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(trim(s.substr(pos)));
      return out;
    }
    out.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 1;
  }
}

std::optional<double> to_real(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(std::string_view s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

double real_field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    fail(ErrorCode::kSchema, line, std::string("missing or non-numeric \"") + key + "\"");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) fail(ErrorCode::kSchema, line, std::string("non-finite \"") + key + "\"");
  return v;
}

std::string string_field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    fail(ErrorCode::kSchema, line, std::string("missing or non-string \"") + key + "\"");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string_field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) fail(ErrorCode::kSchema, line, std::string("non-string \"") + key + "\"");
  return it->get<std::string>();
}

int int_field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    fail(ErrorCode::kSchema, line, std::string("missing or non-integer \"") + key + "\"");
  }
  const auto v = it->get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    fail(ErrorCode::kSchema, line, std::string("out-of-range \"") + key + "\"");
  }
  return static_cast<int>(v);
}

json parse_json(std::string_view text, std::size_t line) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::kParse, line, "malformed JSON");
  return j;
}

json rounded(double v) {
  if (!std::isfinite(v)) return nullptr;
  return *to_real(format_real(v));
}

Group group_or_fail(std::string_view s, std::size_t line) {
  const auto g = parse_group(s);
  if (!g) fail(ErrorCode::kSchema, line, "unknown group \"" + std::string(s) + "\"");
  return *g;
}

Task task_or_fail(std::string_view s, std::size_t line) {
  const auto t = parse_task(s);
  if (!t) fail(ErrorCode::kSchema, line, "unknown task \"" + std::string(s) + "\"");
  return *t;
}

Dim dim_or_fail(std::string_view s, std::size_t line) {
  const auto d = parse_dim(s);
  if (!d) fail(ErrorCode::kSchema, line, "unknown dimensionality \"" + std::string(s) + "\"");
  return *d;
}

void parse_meta(const json& meta, Trajectory& t, bool& fps_given, std::optional<Dim>& dim,
                std::size_t line) {
  if (!meta.is_object()) fail(ErrorCode::kSchema, line, "\"meta\" must be an object");
  if (auto s = optional_string_field(meta, "subject", line)) t.subject_id = *s;
  if (auto s = optional_string_field(meta, "group", line)) t.group = group_or_fail(*s, line);
  if (auto s = optional_string_field(meta, "task", line)) t.task = task_or_fail(*s, line);
  if (auto s = optional_string_field(meta, "dim", line)) dim = dim_or_fail(*s, line);
  if (meta.contains("fps")) {
    t.nominal_fps = real_field(meta, "fps", line);
    fps_given = true;
  }
  if (meta.contains("width") || meta.contains("height")) {
    t.resolution = ImageSize{int_field(meta, "width", line), int_field(meta, "height", line)};
    if (t.resolution->width <= 0 || t.resolution->height <= 0) {
      fail(ErrorCode::kSchema, line, "resolution must be positive");
    }
  }
  if (meta.contains("repetition")) t.repetition = int_field(meta, "repetition", line);
}

LandmarkFrame parse_frame(const json& rec, std::optional<Dim>& dim, std::size_t line) {
  LandmarkFrame f;
  f.timestamp = real_field(rec, "t", line);

  const auto pts = rec.find("pts");
  if (pts == rec.end() || !pts->is_array()) fail(ErrorCode::kSchema, line, "missing \"pts\" array");
  if (pts->size() != kLandmarkCount) {
    fail(ErrorCode::kSchema, line,
         "landmark count " + std::to_string(pts->size()) + " ≠ " + std::to_string(kLandmarkCount));
  }
  f.points.reserve(kLandmarkCount);
  for (const auto& p : *pts) {
    if (!p.is_array() || (p.size() != 2 && p.size() != 3)) {
      fail(ErrorCode::kSchema, line, "each landmark must be [u, v] or [x, y, z]");
    }
    const Dim this_dim = p.size() == 2 ? Dim::k2D : Dim::k3D;
    if (!dim) dim = this_dim;
    if (*dim != this_dim) fail(ErrorCode::kSchema, line, "landmark arity does not match dimensionality");
    Vec3 v;
    double* dst[3] = {&v.x, &v.y, &v.z};
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (!p[c].is_number()) fail(ErrorCode::kSchema, line, "non-numeric landmark coordinate");
      *dst[c] = p[c].get<double>();
    }
    f.points.push_back(v);
  }

  if (const auto z = rec.find("z"); z != rec.end() && !z->is_null()) {
    if (!z->is_array() || z->size() != kLandmarkCount) {
      fail(ErrorCode::kSchema, line, "\"z\" must hold " + std::to_string(kLandmarkCount) + " depths");
    }
    std::vector<double> depth;
    depth.reserve(kLandmarkCount);
    for (const auto& d : *z) {
      if (!d.is_number()) fail(ErrorCode::kSchema, line, "non-numeric depth");
      depth.push_back(d.get<double>());
    }
    f.depth = std::move(depth);
  }

  if (const auto valid = rec.find("valid"); valid != rec.end() && !valid->is_null()) {
    if (!valid->is_array() || valid->size() != kLandmarkCount) {
      fail(ErrorCode::kSchema, line,
           "\"valid\" must hold " + std::to_string(kLandmarkCount) + " flags");
    }
    std::vector<bool> flags;
    flags.reserve(kLandmarkCount);
    for (const auto& b : *valid) {
      if (!b.is_boolean()) fail(ErrorCode::kSchema, line, "non-boolean validity flag");
      flags.push_back(b.get<bool>());
    }
    f.valid = std::move(flags);
  }
  return f;
}

template <typename Loader>
auto with_path(const std::string& path, Loader&& load) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  try {
    return load(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

json smd_cell(const stats::SmdRow& r) {
  return {{"hc_mean", rounded(r.hc_mean)}, {"hc_sd", rounded(r.hc_sd)}, {"hc_n", r.hc_n},
          {"pd_mean", rounded(r.pd_mean)}, {"pd_sd", rounded(r.pd_sd)}, {"pd_n", r.pd_n},
          {"smd", rounded(r.smd)},         {"class", std::string(stats::to_string(r.magnitude))}};
}

}  // namespace

std::optional<Format> parse_format(std::string_view s) {
  if (s == "delimited" || s == "csv") return Format::kDelimited;
  if (s == "structured" || s == "json") return Format::kStructured;
  return std::nullopt;
}

std::string format_real(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Landmark streams

Trajectory parse_landmark_stream(std::istream& in) {
  Trajectory t;
  std::optional<Dim> dim;
  bool fps_given = false;
  bool seen_meta = false;
  std::vector<std::size_t> frame_lines;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    const json rec = parse_json(text, line);
    if (!rec.is_object()) fail(ErrorCode::kSchema, line, "record must be a JSON object");
    if (const auto meta = rec.find("meta"); meta != rec.end()) {
      if (seen_meta || !t.frames.empty()) {
        fail(ErrorCode::kSchema, line, "\"meta\" record must come first and only once");
      }
      parse_meta(*meta, t, fps_given, dim, line);
      seen_meta = true;
      continue;
    }
    t.frames.push_back(parse_frame(rec, dim, line));
    frame_lines.push_back(line);
  }

  t.dim = dim.value_or(Dim::k2D);
  if (!fps_given && t.frames.size() >= 2 && t.duration() > 0.0) {
    t.nominal_fps = static_cast<double>(t.frames.size() - 1) / t.duration();
  }

  const auto violations = validate_trajectory(t);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::string msg = v.message;
    if (v.frame) msg = at_line(frame_lines[*v.frame], msg);
    if (violations.size() > 1) {
      msg += " (+" + std::to_string(violations.size() - 1) + " more)";
    }
    throw Error(ErrorCode::kValidation, msg);
  }
  return t;
}

void write_landmark_stream(const Trajectory& t, std::ostream& out) {
  json meta = {{"subject", t.subject_id},
               {"group", std::string(to_string(t.group))},
               {"task", std::string(to_string(t.task))},
               {"dim", std::string(to_string(t.dim))},
               {"fps", t.nominal_fps}};
  if (t.resolution) {
    meta["width"] = t.resolution->width;
    meta["height"] = t.resolution->height;
  }
  if (t.repetition) meta["repetition"] = *t.repetition;
  out << json{{"meta", meta}}.dump() << '\n';

  for (const auto& f : t.frames) {
    json pts = json::array();
    for (const auto& p : f.points) {
      pts.push_back(t.dim == Dim::k2D ? json{p.x, p.y} : json{p.x, p.y, p.z});
    }
    json rec = {{"t", f.timestamp}, {"pts", std::move(pts)}};
    if (f.depth) rec["z"] = *f.depth;
    if (f.valid) rec["valid"] = *f.valid;
    out << rec.dump() << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "failed to write landmark stream");
}

// ---------------------------------------------------------------------------
// Intrinsics

CameraIntrinsics parse_intrinsics(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const json j = parse_json(text, 1);
  if (!j.is_object()) fail(ErrorCode::kSchema, 1, "intrinsics must be a JSON object");
  CameraIntrinsics k;
  k.fx = real_field(j, "fx", 1);
  k.fy = real_field(j, "fy", 1);
  k.cx = real_field(j, "cx", 1);
  k.cy = real_field(j, "cy", 1);
  k.width = int_field(j, "width", 1);
  k.height = int_field(j, "height", 1);
  validate_intrinsics(k);
  return k;
}

void write_intrinsics(const CameraIntrinsics& k, std::ostream& out) {
  out << json{{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx},
              {"cy", k.cy}, {"width", k.width}, {"height", k.height}}
             .dump(2)
      << '\n';
}

// ---------------------------------------------------------------------------
// Annotations

std::vector<RepetitionAnnotation> parse_annotations(std::istream& in) {
  std::vector<RepetitionAnnotation> out;
  std::string raw;
  std::size_t line = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (first) {
      first = false;
      if (text == kAnnotationHeader) continue;
    }
    const auto f = split(text, ',');
    if (f.size() != 4) fail(ErrorCode::kParse, line, "expected 4 fields: " + std::string(kAnnotationHeader));
    RepetitionAnnotation a;
    a.task = task_or_fail(f[0], line);
    const auto idx = to_integer(f[1]);
    const auto start = to_real(f[2]);
    const auto end = to_real(f[3]);
    if (!idx || !start || !end) fail(ErrorCode::kParse, line, "non-numeric field");
    if (*idx < 1 || *idx > std::numeric_limits<int>::max()) {
      fail(ErrorCode::kValidation, line, "repetition index must be >= 1");
    }
    a.repetition_index = static_cast<int>(*idx);
    a.start = *start;
    a.end = *end;
    if (!std::isfinite(a.start) || !std::isfinite(a.end) || !(a.start < a.end)) {
      fail(ErrorCode::kValidation, line,
           "repetition " + std::to_string(a.repetition_index) + " has start >= end");
    }
    out.push_back(a);
  }

  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.repetition_index < b.repetition_index;
  });
  for (std::size_t i = 1; i < out.size(); ++i) {
    const auto& prev = out[i - 1];
    const auto& cur = out[i];
    if (cur.repetition_index == prev.repetition_index) {
      throw Error(ErrorCode::kValidation,
                  "duplicate repetition index " + std::to_string(cur.repetition_index));
    }
    if (cur.task != prev.task) {
      throw Error(ErrorCode::kValidation, "annotations mix tasks");
    }
    if (!(cur.start > prev.end)) {
      throw Error(ErrorCode::kValidation,
                  "repetitions " + std::to_string(prev.repetition_index) + " and " +
                      std::to_string(cur.repetition_index) + " overlap or are out of order");
    }
  }
  return out;
}

void write_annotations(const std::vector<RepetitionAnnotation>& ann, std::ostream& out) {
  out << kAnnotationHeader << '\n';
  for (const auto& a : ann) {
    out << to_string(a.task) << ',' << a.repetition_index << ',' << format_real(a.start, 17) << ','
        << format_real(a.end, 17) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Manifest

CohortManifest parse_manifest(std::istream& in, std::string base_dir) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const json j = parse_json(text, 1);
  const auto entries = j.is_object() ? j.find("entries") : j.end();
  if (!j.is_object() || entries == j.end() || !entries->is_array()) {
    fail(ErrorCode::kSchema, 1, "manifest must be an object with an \"entries\" array");
  }
  CohortManifest m;
  m.base_dir = std::move(base_dir);
  std::map<std::string, Group> groups;
  std::map<std::pair<std::string, Task>, bool> seen;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    const json& e = (*entries)[i];
    const std::string where = "entry " + std::to_string(i);
    if (!e.is_object()) throw Error(ErrorCode::kSchema, where + ": must be an object");
    try {
      ManifestEntry me;
      me.subject_id = string_field(e, "subject_id", 1);
      me.group = group_or_fail(string_field(e, "group", 1), 1);
      me.task = task_or_fail(string_field(e, "task", 1), 1);
      me.landmark_file = string_field(e, "landmark_file", 1);
      me.annotation_file = optional_string_field(e, "annotation_file", 1);
      me.intrinsics_file = optional_string_field(e, "intrinsics_file", 1);
      me.rest_file = optional_string_field(e, "rest_file", 1).value_or("");
      if (me.task != Task::kRest && me.rest_file.empty()) {
        throw Error(ErrorCode::kMissingRest, "subject " + me.subject_id + " " +
                                                 std::string(to_string(me.task)) +
                                                 " has no rest_file");
      }
      if (seen[{me.subject_id, me.task}]) {
        throw Error(ErrorCode::kValidation, "duplicate (subject, task) " + me.subject_id + " " +
                                                std::string(to_string(me.task)));
      }
      seen[{me.subject_id, me.task}] = true;
      if (auto [it, inserted] = groups.emplace(me.subject_id, me.group);
          !inserted && it->second != me.group) {
        throw Error(ErrorCode::kValidation, "subject " + me.subject_id + " listed in both groups");
      }
      m.entries.push_back(std::move(me));
    } catch (const Error& err) {
      std::string msg = err.what();
      if (msg.rfind("line 1: ", 0) == 0) msg.erase(0, 8);
      throw Error(err.code(), where + ": " + msg);
    }
  }
  return m;
}

void write_manifest(const CohortManifest& m, std::ostream& out) {
  json entries = json::array();
  for (const auto& e : m.entries) {
    json j = {{"subject_id", e.subject_id},
              {"group", std::string(to_string(e.group))},
              {"task", std::string(to_string(e.task))},
              {"landmark_file", e.landmark_file}};
    if (e.annotation_file) j["annotation_file"] = *e.annotation_file;
    if (e.intrinsics_file) j["intrinsics_file"] = *e.intrinsics_file;
    if (!e.rest_file.empty()) j["rest_file"] = e.rest_file;
    entries.push_back(std::move(j));
  }
  out << json{{"entries", entries}}.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Feature table

void write_feature_table(const std::vector<FeatureRow>& rows, std::ostream& out, Format format) {
  if (format == Format::kStructured) {
    json arr = json::array();
    for (const auto& r : rows) {
      json j = {{"subject", r.subject_id},
                {"group", std::string(to_string(r.group))},
                {"task", std::string(to_string(r.task))},
                {"dim", std::string(to_string(r.dim))},
                {"repetition", r.repetition}};
      for (Feature f : kAllFeatures) j[std::string(to_string(f))] = rounded(r.features[f]);
      arr.push_back(std::move(j));
    }
    out << json{{"rows", arr}}.dump(2) << '\n';
  } else {
    out << kFeatureTableKeyColumns;
    for (Feature f : kAllFeatures) out << ',' << to_string(f);
    out << '\n';
    for (const auto& r : rows) {
      out << r.subject_id << ',' << to_string(r.group) << ',' << to_string(r.task) << ','
          << to_string(r.dim) << ',' << r.repetition;
      for (Feature f : kAllFeatures) out << ',' << format_real(r.features[f]);
      out << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "failed to write feature table");
}

std::vector<FeatureRow> parse_feature_table(std::istream& in, Format format) {
  std::vector<FeatureRow> rows;
  if (format == Format::kStructured) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const json j = parse_json(text, 1);
    const auto arr = j.is_object() ? j.find("rows") : j.end();
    if (!j.is_object() || arr == j.end() || !arr->is_array()) {
      fail(ErrorCode::kSchema, 1, "feature table must be an object with a \"rows\" array");
    }
    for (const auto& e : *arr) {
      if (!e.is_object()) fail(ErrorCode::kSchema, 1, "feature row must be an object");
      FeatureRow r;
      r.subject_id = string_field(e, "subject", 1);
      r.group = group_or_fail(string_field(e, "group", 1), 1);
      r.task = task_or_fail(string_field(e, "task", 1), 1);
      r.dim = dim_or_fail(string_field(e, "dim", 1), 1);
      r.repetition = int_field(e, "repetition", 1);
      for (Feature f : kAllFeatures) {
        const std::string key(to_string(f));
        const auto it = e.find(key);
        if (it == e.end()) fail(ErrorCode::kSchema, 1, "missing feature \"" + key + "\"");
        if (it->is_null()) {
          r.features[f] = std::numeric_limits<double>::quiet_NaN();
        } else if (it->is_number()) {
          r.features[f] = it->get<double>();
        } else {
          fail(ErrorCode::kSchema, 1, "non-numeric feature \"" + key + "\"");
        }
      }
      rows.push_back(std::move(r));
    }
    return rows;
  }

  std::string header(kFeatureTableKeyColumns);
  for (Feature f : kAllFeatures) header += "," + std::string(to_string(f));

  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (!have_header) {
      if (text != header) fail(ErrorCode::kSchema, line, "unexpected feature table header");
      have_header = true;
      continue;
    }
    const auto f = split(text, ',');
    if (f.size() != 5 + kFeatureCount) {
      fail(ErrorCode::kParse, line, "expected " + std::to_string(5 + kFeatureCount) + " fields");
    }
    FeatureRow r;
    r.subject_id = std::string(f[0]);
    r.group = group_or_fail(f[1], line);
    r.task = task_or_fail(f[2], line);
    r.dim = dim_or_fail(f[3], line);
    const auto rep = to_integer(f[4]);
    if (!rep || *rep < 1 || *rep > std::numeric_limits<int>::max()) {
      fail(ErrorCode::kParse, line, "bad repetition index");
    }
    r.repetition = static_cast<int>(*rep);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const auto v = to_real(f[5 + i]);
      if (!v) fail(ErrorCode::kParse, line, "non-numeric value in column " + std::to_string(6 + i));
      r.features.values[i] = *v;
    }
    rows.push_back(std::move(r));
  }
  if (!have_header) fail(ErrorCode::kSchema, line, "missing feature table header");
  return rows;
}

// ---------------------------------------------------------------------------
// SMD report

void write_smd_report(const std::vector<stats::SmdRow>& rows, std::ostream& out, Format format) {
  struct Pair {
    const stats::SmdRow* d3 = nullptr;
    const stats::SmdRow* d2 = nullptr;
  };
  std::map<std::pair<Task, Feature>, Pair> table;
  for (const auto& r : rows) {
    auto& p = table[{r.task, r.feature}];
    (r.dim == Dim::k3D ? p.d3 : p.d2) = &r;
  }

  if (format == Format::kStructured) {
    json arr = json::array();
    for (const auto& [key, p] : table) {
      arr.push_back({{"task", std::string(to_string(key.first))},
                     {"feature", std::string(to_string(key.second))},
                     {"3d", p.d3 ? smd_cell(*p.d3) : json(nullptr)},
                     {"2d", p.d2 ? smd_cell(*p.d2) : json(nullptr)}});
    }
    out << json{{"rows", arr}}.dump(2) << '\n';
  } else {
    out << "task,feature";
    for (std::string_view d : {"3d", "2d"}) {
      for (std::string_view c :
           {"hc_mean", "hc_sd", "hc_n", "pd_mean", "pd_sd", "pd_n", "smd", "class"}) {
        out << ',' << c << '_' << d;
      }
    }
    out << '\n';
    for (const auto& [key, p] : table) {
      out << to_string(key.first) << ',' << to_string(key.second);
      for (const stats::SmdRow* r : {p.d3, p.d2}) {
        if (!r) {
          out << ",,,,,,,,";
          continue;
        }
        out << ',' << format_real(r->hc_mean) << ',' << format_real(r->hc_sd) << ',' << r->hc_n
            << ',' << format_real(r->pd_mean) << ',' << format_real(r->pd_sd) << ',' << r->pd_n
            << ',' << format_real(r->smd) << ',' << stats::to_string(r->magnitude);
      }
      out << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "failed to write SMD report");
}

// ---------------------------------------------------------------------------
// Files

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path);
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
}

Trajectory load_landmark_stream(const std::string& path) {
  return with_path(path, [](std::istream& in) { return parse_landmark_stream(in); });
}

CameraIntrinsics load_intrinsics(const std::string& path) {
  return with_path(path, [](std::istream& in) { return parse_intrinsics(in); });
}

std::vector<RepetitionAnnotation> load_annotations(const std::string& path) {
  return with_path(path, [](std::istream& in) { return parse_annotations(in); });
}

CohortManifest load_manifest(const std::string& path) {
  const std::string base = std::filesystem::path(path).parent_path().string();
  return with_path(path, [&](std::istream& in) { return parse_manifest(in, base); });
}

}  // namespace orofacial::io
