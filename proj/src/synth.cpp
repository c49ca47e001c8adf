#include "orofacial/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "orofacial/error.hpp"
#include "orofacial/io.hpp"
#include "orofacial/kinematics.hpp"

namespace orofacial::synth {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFaceWidthPx = 200.0;

// Rest mouth in face units (face width = 1), relative to the mouth centre.
constexpr double kMouthCenterY = 0.28;
constexpr double kRestHalfWidth = 0.125;
constexpr double kRestOpening = 0.09;

/// Multiplicative mouth state relative to the rest pose.
struct MouthState {
  double opening = 1.0;
  double left = 1.0;
  double right = 1.0;
};

struct TemplatePoint {
  double x, y;       // face units
  double depth;      // meters, relative to the lip plane
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix(mix(mix(seed) ^ a) ^ b);
}

// Static (non-mouth) part of a 68-point iBUG face.
std::vector<TemplatePoint> static_template() {
  std::vector<TemplatePoint> p(kLandmarkCount, {0.0, 0.0, 0.0});
  for (int i = 0; i <= 16; ++i) {  // jaw line
    const double a = std::numbers::pi * i / 16.0;
    p[i] = {-0.5 * std::cos(a), -0.05 + 0.5 * std::sin(a), 0.045 - 0.03 * std::sin(a)};
  }
  for (int i = 0; i < 5; ++i) {  // brows
    const double x = 0.08 + 0.08 * i;
    const double y = -0.30 - 0.04 * std::sin(std::numbers::pi * i / 4.0);
    p[21 - i] = {-x, y, 0.005};
    p[22 + i] = {x, y, 0.005};
  }
  for (int i = 0; i < 4; ++i) p[27 + i] = {0.0, -0.22 + 0.09 * i, -0.005 - 0.007 * i};  // bridge
  for (int i = 0; i < 5; ++i) {  // nose base
    p[31 + i] = {-0.08 + 0.04 * i, 0.12 + (i == 2 ? 0.01 : 0.0), -0.012 + (i == 2 ? -0.004 : 0.0)};
  }
  const double ex[6] = {-0.065, -0.025, 0.025, 0.065, 0.025, -0.025};
  const double ey[6] = {0.0, -0.025, -0.025, 0.0, 0.02, 0.02};
  for (int i = 0; i < 6; ++i) {  // eyes
    p[36 + i] = {-0.2 + ex[i], -0.18 + ey[i], 0.01};
    p[42 + i] = {0.2 + ex[i], -0.18 + ey[i], 0.01};
  }
  return p;
}

// Mouth landmarks 48-67 for a given state. The corners sit slightly behind
// the lip plane and the midline slightly in front of it, so 3d areas are not
// a uniform rescaling of 2d areas.
void place_mouth(std::vector<TemplatePoint>& p, const MouthState& s) {
  const double h = 0.5 * kRestOpening * s.opening;
  const double dl = kRestHalfWidth * s.left;
  const double dr = kRestHalfWidth * s.right;
  const double y0 = kMouthCenterY;
  auto set = [&](std::size_t i, double x, double y) {
    double depth = 0.0;
    if (i == 48 || i == 54 || i == 60 || i == 64) depth = 0.006;
    if (i == 51 || i == 57 || i == 62 || i == 66) depth = -0.004;
    p[i] = {x, y0 + y, depth};
  };
  set(48, -dl, 0.0);
  set(49, -0.6 * dl, -0.75 * h);
  set(50, -0.25 * dl, -0.95 * h);
  set(51, 0.0, -h);
  set(52, 0.25 * dr, -0.95 * h);
  set(53, 0.6 * dr, -0.75 * h);
  set(54, dr, 0.0);
  set(55, 0.6 * dr, 0.75 * h);
  set(56, 0.25 * dr, 0.95 * h);
  set(57, 0.0, h);
  set(58, -0.25 * dl, 0.95 * h);
  set(59, -0.6 * dl, 0.75 * h);
  set(60, -0.85 * dl, 0.0);
  set(61, -0.3 * dl, -0.45 * h);
  set(62, 0.0, -0.5 * h);
  set(63, 0.3 * dr, -0.45 * h);
  set(64, 0.85 * dr, 0.0);
  set(65, 0.3 * dr, 0.45 * h);
  set(66, 0.0, 0.5 * h);
  set(67, -0.3 * dl, 0.45 * h);
}

Trajectory render(const FaceGeometry& face, double duration, double fps,
                  const std::function<MouthState(double)>& motion, double jitter_sd,
                  std::uint64_t seed, const std::optional<CameraIntrinsics>& k) {
  Trajectory t;
  t.nominal_fps = fps;
  t.dim = Dim::k2D;
  t.resolution = k ? ImageSize{k->width, k->height} : ImageSize{640, 480};

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<TemplatePoint> shape = static_template();
  const double px = kFaceWidthPx * face.scale;
  const auto n = static_cast<std::size_t>(std::floor(duration * fps + 1e-9)) + 1;
  t.frames.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ts = static_cast<double>(i) / fps;
    place_mouth(shape, motion(ts));
    LandmarkFrame f;
    f.timestamp = ts;
    f.points.resize(kLandmarkCount);
    if (k) f.depth.emplace(kLandmarkCount);
    for (std::size_t j = 0; j < kLandmarkCount; ++j) {
      double u = face.center_u + px * shape[j].x;
      double v = face.center_v + px * shape[j].y;
      if (jitter_sd > 0.0) {
        u += jitter_sd * noise(rng);
        v += jitter_sd * noise(rng);
      }
      f.points[j] = {u, v, 0.0};
      if (k) (*f.depth)[j] = face.distance + shape[j].depth;
    }
    t.frames.push_back(std::move(f));
  }
  return t;
}

MouthState sinusoid_state(double tb, double wm, double asymmetry, double phase_s) {
  return {1.0 + tb * phase_s, 1.0 + asymmetry * wm * phase_s, 1.0 + wm * phase_s};
}

// Range of (1 + a s)(1 + b s) over s in [-1, 1].
double product_range(double a, double b) {
  auto f = [&](double s) { return (1.0 + a * s) * (1.0 + b * s); };
  double lo = std::min(f(-1.0), f(1.0));
  double hi = std::max(f(-1.0), f(1.0));
  if (a * b != 0.0) {
    const double vertex = -(a + b) / (2.0 * a * b);
    if (vertex > -1.0 && vertex < 1.0) {
      lo = std::min(lo, f(vertex));
      hi = std::max(hi, f(vertex));
    }
  }
  return hi - lo;
}

std::vector<double> moment_matched_normals(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(static_cast<std::size_t>(n));
  for (double& v : z) v = normal(rng);
  if (n < 2) return std::vector<double>(z.size(), 0.0);
  double m = 0.0;
  for (double v : z) m += v;
  m /= n;
  double ss = 0.0;
  for (double v : z) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / (n - 1));
  for (double& v : z) v = sd > 0.0 ? (v - m) / sd : 0.0;
  return z;
}

struct TaskProfile {
  double tb, wm, rate;
};

TaskProfile profile(Task t) {
  switch (t) {
    case Task::kBBP: return {1.0, 1.0, 1.0};
    case Task::kPA: return {0.6, 0.2, 2.5};
    case Task::kBigSmile: return {0.4, 1.0, 0.5};
    case Task::kRest: return {0.0, 0.0, 1.0};
  }
  return {1.0, 1.0, 1.0};
}

MotionArchetype archetype_from_json(const json& j, MotionArchetype a) {
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "archetype must be a JSON object");
  auto real = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw Error(ErrorCode::kSchema, std::string("non-numeric ") + key);
    dst = j[key].get<double>();
  };
  real("tb_amplitude", a.tb_amplitude);
  real("wm_amplitude", a.wm_amplitude);
  real("rate", a.rate);
  real("asymmetry", a.asymmetry);
  real("jitter_sd", a.jitter_sd);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw Error(ErrorCode::kSchema, "seed must be unsigned");
    a.seed = j["seed"].get<std::uint64_t>();
  }
  return a;
}

json archetype_to_json(const MotionArchetype& a) {
  return {{"tb_amplitude", a.tb_amplitude}, {"wm_amplitude", a.wm_amplitude},
          {"rate", a.rate},                 {"asymmetry", a.asymmetry},
          {"jitter_sd", a.jitter_sd},       {"seed", a.seed}};
}

std::string two_digit(int i) {
  std::string s = std::to_string(i);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

void validate(const MotionArchetype& a) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kValidation, "invalid motion archetype: " + what);
  };
  if (!(a.tb_amplitude >= 0.0 && a.tb_amplitude < 1.0)) fail("tb_amplitude must lie in [0, 1)");
  if (!(a.wm_amplitude >= 0.0 && a.wm_amplitude < 1.0)) fail("wm_amplitude must lie in [0, 1)");
  if (!(a.rate > 0.0 && a.rate <= 5.0)) fail("rate must lie in (0, 5] Hz");
  if (!(a.asymmetry > 0.0 && a.asymmetry <= 1.0)) fail("asymmetry must lie in (0, 1]");
  if (!(a.jitter_sd >= 0.0) || !std::isfinite(a.jitter_sd)) fail("jitter_sd must be >= 0");
}

CameraIntrinsics default_intrinsics() { return {600.0, 600.0, 320.0, 240.0, 640, 480}; }

FeatureVector expected_features(const MotionArchetype& a) {
  const double w = kTwoPi * a.rate;
  const double A = a.tb_amplitude;
  const double bl = a.asymmetry * a.wm_amplitude;
  const double br = a.wm_amplitude;
  const double bw = 0.5 * (bl + br);

  FeatureVector fv;
  fv[Feature::kDeltaTB] = 2.0 * A;
  fv[Feature::kMaxVelTB] = A * w;
  fv[Feature::kMinVelTB] = -A * w;
  fv[Feature::kMaxAccTB] = A * w * w;
  fv[Feature::kMinAccTB] = -A * w * w;
  fv[Feature::kDeltaWM] = 2.0 * bw;
  fv[Feature::kMaxVelWM] = bw * w;
  fv[Feature::kMinVelWM] = -bw * w;
  fv[Feature::kMaxAccWM] = bw * w * w;
  fv[Feature::kMinAccWM] = -bw * w * w;
  fv[Feature::kMeanArea] = 1.0 + 0.5 * A * bw;
  fv[Feature::kDeltaArea] = product_range(A, bw);

  // Normalized areas are (1 + A s)(1 + b s) with s = sin(phase); over whole
  // cycles E[s] = E[s^3] = 0, E[s^2] = 1/2, E[s^4] = 3/8.
  const double mean_l = 1.0 + 0.5 * A * bl;
  const double mean_r = 1.0 + 0.5 * A * br;
  const double var_l = 0.5 * (A + bl) * (A + bl) + (A * bl) * (A * bl) / 8.0;
  const double var_r = 0.5 * (A + br) * (A + br) + (A * br) * (A * br) / 8.0;
  const double cov = 0.5 * (A + bl) * (A + br) + A * A * bl * br / 8.0;
  const double denom = var_l + var_r + (mean_l - mean_r) * (mean_l - mean_r);
  fv[Feature::kCccArea] = denom > 0.0 ? 2.0 * cov / denom : std::nan("");
  return fv;
}

SyntheticRecording gen_trajectory(const MotionArchetype& a, Task task, double duration, double fps,
                                  const std::optional<CameraIntrinsics>& intrinsics,
                                  const FaceGeometry& face) {
  validate(a);
  if (intrinsics) validate_intrinsics(*intrinsics);
  if (!(fps > 0.0) || !(duration * fps >= 5.0)) {
    throw Error(ErrorCode::kValidation, "synthetic recording needs duration * fps >= 5");
  }
  const double w = kTwoPi * a.rate;
  auto motion = [&](double t) {
    return sinusoid_state(a.tb_amplitude, a.wm_amplitude, a.asymmetry, std::sin(w * t));
  };
  SyntheticRecording out;
  out.trajectory = render(face, duration, fps, motion, a.jitter_sd, a.seed, intrinsics);
  out.trajectory.task = task;
  out.expected = expected_features(a);
  return out;
}

void validate(const CohortParams& p) {
  validate(p.hc);
  validate(p.pd);
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kValidation, "invalid cohort parameters: " + what);
  };
  if (p.n_hc < 2 || p.n_pd < 2) fail("each group needs at least 2 subjects");
  if (p.n_hc > 99 || p.n_pd > 99) fail("at most 99 subjects per group");
  if (p.reps < 1) fail("reps must be >= 1");
  if (!(p.fps >= 10.0 && p.fps <= 120.0)) fail("fps must lie in [10, 120]");
  if (!(p.rest_duration >= 5.0)) fail("rest_duration must be >= 5 s");
  if (!(p.cycles_per_rep > 0.0)) fail("cycles_per_rep must be > 0");
  if (!(p.pause >= 0.0)) fail("pause must be >= 0");
  if (!(p.subject_spread >= 0.0) || !(p.repetition_spread >= 0.0)) fail("spreads must be >= 0");
  for (Task t : p.tasks) {
    if (t == Task::kRest) fail("REST is generated implicitly; list only repetition tasks");
  }
  if (p.intrinsics) validate_intrinsics(*p.intrinsics);
}

CohortParams parse_cohort_params(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kParse, "cohort parameters must be a JSON object");
  }
  CohortParams p;
  if (j.contains("hc")) p.hc = archetype_from_json(j["hc"], p.hc);
  if (j.contains("pd")) p.pd = archetype_from_json(j["pd"], p.pd);
  auto integer = [&](const char* key, int& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw Error(ErrorCode::kSchema, std::string("non-integer ") + key);
    dst = j[key].get<int>();
  };
  auto real = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw Error(ErrorCode::kSchema, std::string("non-numeric ") + key);
    dst = j[key].get<double>();
  };
  integer("n_hc", p.n_hc);
  integer("n_pd", p.n_pd);
  integer("reps", p.reps);
  real("fps", p.fps);
  real("rest_duration", p.rest_duration);
  real("cycles_per_rep", p.cycles_per_rep);
  real("pause", p.pause);
  real("subject_spread", p.subject_spread);
  real("repetition_spread", p.repetition_spread);
  if (j.contains("tasks")) {
    if (!j["tasks"].is_array()) throw Error(ErrorCode::kSchema, "tasks must be an array");
    p.tasks.clear();
    for (const auto& t : j["tasks"]) {
      const auto task = t.is_string() ? parse_task(t.get<std::string>()) : std::nullopt;
      if (!task) throw Error(ErrorCode::kSchema, "unknown task in tasks");
      p.tasks.push_back(*task);
    }
  }
  if (j.contains("intrinsics")) {
    if (j["intrinsics"].is_null()) {
      p.intrinsics.reset();
    } else {
      std::istringstream k(j["intrinsics"].dump());
      p.intrinsics = io::parse_intrinsics(k);
    }
  }
  validate(p);
  return p;
}

void write_cohort_params(const CohortParams& p, std::ostream& out) {
  json tasks = json::array();
  for (Task t : p.tasks) tasks.push_back(std::string(to_string(t)));
  json j = {{"hc", archetype_to_json(p.hc)},
            {"pd", archetype_to_json(p.pd)},
            {"n_hc", p.n_hc},
            {"n_pd", p.n_pd},
            {"reps", p.reps},
            {"tasks", tasks},
            {"fps", p.fps},
            {"rest_duration", p.rest_duration},
            {"cycles_per_rep", p.cycles_per_rep},
            {"pause", p.pause},
            {"subject_spread", p.subject_spread},
            {"repetition_spread", p.repetition_spread}};
  if (p.intrinsics) {
    const auto& k = *p.intrinsics;
    j["intrinsics"] = {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx},
                       {"cy", k.cy}, {"width", k.width}, {"height", k.height}};
  } else {
    j["intrinsics"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

SyntheticCohort gen_cohort(const CohortParams& p, std::uint64_t seed) {
  validate(p);
  SyntheticCohort cohort;

  for (Group group : {Group::kHC, Group::kPD}) {
    const MotionArchetype& base = group == Group::kHC ? p.hc : p.pd;
    const int n = group == Group::kHC ? p.n_hc : p.n_pd;
    const auto group_tag = static_cast<std::uint64_t>(group) + 1;

    std::mt19937_64 group_rng(derive_seed(seed, group_tag));
    const auto z_amp = moment_matched_normals(group_rng, n);
    const auto z_rate = moment_matched_normals(group_rng, n);
    const auto z_face = moment_matched_normals(group_rng, n);

    for (int s = 0; s < n; ++s) {
      const std::string id = std::string(to_string(group)) + two_digit(s + 1);
      const std::uint64_t subject_seed = derive_seed(seed, group_tag, static_cast<std::uint64_t>(s));
      std::mt19937_64 rng(subject_seed);
      std::uniform_real_distribution<double> offset(-10.0, 10.0);
      std::normal_distribution<double> normal(0.0, 1.0);

      FaceGeometry face;
      face.scale = std::exp(0.1 * z_face[static_cast<std::size_t>(s)]);
      face.center_u += offset(rng);
      face.center_v += offset(rng);
      face.distance = 0.40 + 0.005 * offset(rng);

      const double amp_factor = std::exp(p.subject_spread * z_amp[static_cast<std::size_t>(s)]);
      const double rate_factor = std::exp(0.5 * p.subject_spread * z_rate[static_cast<std::size_t>(s)]);

      const std::string rest_file = id + "/REST.jsonl";
      auto rest = std::make_shared<Trajectory>(
          render(face, p.rest_duration, p.fps, [](double) { return MouthState{}; }, base.jitter_sd,
                 derive_seed(subject_seed, 100), p.intrinsics));
      rest->subject_id = id;
      rest->group = group;
      rest->task = Task::kRest;

      for (Task task : p.tasks) {
        const TaskProfile prof = profile(task);
        const double rate = std::min(5.0, base.rate * prof.rate * rate_factor);
        const double rep_len = p.cycles_per_rep / rate;

        struct Rep {
          double start, end, tb, wm;
        };
        std::vector<Rep> reps;
        double cursor = p.pause;
        for (int r = 0; r < p.reps; ++r) {
          const double rep_factor = std::exp(p.repetition_spread * normal(rng));
          const double tb = std::min(0.95, base.tb_amplitude * prof.tb * amp_factor * rep_factor);
          const double wm = std::min(0.95, base.wm_amplitude * prof.wm * amp_factor * rep_factor);
          reps.push_back({cursor, cursor + rep_len, tb, wm});
          cursor += rep_len + p.pause;
        }
        const double total = cursor;
        const double w = kTwoPi * rate;
        auto motion = [&](double t) {
          for (const Rep& r : reps) {
            if (t >= r.start && t <= r.end) {
              return sinusoid_state(r.tb, r.wm, base.asymmetry, std::sin(w * (t - r.start)));
            }
          }
          return MouthState{};
        };

        CohortRecording rec;
        rec.recording = render(face, total, p.fps, motion, base.jitter_sd,
                               derive_seed(subject_seed, 200 + static_cast<std::uint64_t>(task)),
                               p.intrinsics);
        rec.recording.subject_id = id;
        rec.recording.group = group;
        rec.recording.task = task;
        for (int r = 0; r < p.reps; ++r) {
          rec.annotations.push_back(
              {task, r + 1, reps[static_cast<std::size_t>(r)].start, reps[static_cast<std::size_t>(r)].end});
        }
        rec.rest = rest;
        rec.intrinsics = p.intrinsics;

        const std::string task_name(to_string(task));
        rec.entry.subject_id = id;
        rec.entry.group = group;
        rec.entry.task = task;
        rec.entry.landmark_file = id + "/" + task_name + ".jsonl";
        rec.entry.annotation_file = id + "/" + task_name + "_annotations.csv";
        if (p.intrinsics) rec.entry.intrinsics_file = "intrinsics.json";
        rec.entry.rest_file = rest_file;

        cohort.manifest.entries.push_back(rec.entry);
        cohort.recordings.push_back(std::move(rec));
      }
    }
  }
  return cohort;
}

std::string write_cohort(const SyntheticCohort& cohort, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());

  const fs::path root(dir);
  bool wrote_intrinsics = false;
  std::vector<std::string> written_rest;
  for (const auto& rec : cohort.recordings) {
    fs::create_directories(root / rec.entry.subject_id, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create subject directory: " + ec.message());

    std::ostringstream stream;
    io::write_landmark_stream(rec.recording, stream);
    io::write_text_file((root / rec.entry.landmark_file).string(), stream.str());

    std::ostringstream ann;
    io::write_annotations(rec.annotations, ann);
    io::write_text_file((root / *rec.entry.annotation_file).string(), ann.str());

    if (std::find(written_rest.begin(), written_rest.end(), rec.entry.rest_file) ==
        written_rest.end()) {
      std::ostringstream rest;
      io::write_landmark_stream(*rec.rest, rest);
      io::write_text_file((root / rec.entry.rest_file).string(), rest.str());
      written_rest.push_back(rec.entry.rest_file);
    }
    if (rec.intrinsics && !wrote_intrinsics) {
      std::ostringstream k;
      io::write_intrinsics(*rec.intrinsics, k);
      io::write_text_file((root / "intrinsics.json").string(), k.str());
      wrote_intrinsics = true;
    }
  }
  std::ostringstream manifest;
  io::write_manifest(cohort.manifest, manifest);
  const std::string path = (root / "manifest.json").string();
  io::write_text_file(path, manifest.str());
  return path;
}

}  // namespace orofacial::synth
