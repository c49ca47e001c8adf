// Batch front end: extract features from a cohort, analyze group
// differences, generate synthetic cohorts and evaluate single SMDs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orofacial/error.hpp"
#include "orofacial/io.hpp"
#include "orofacial/pipeline.hpp"
#include "orofacial/statistics.hpp"
#include "orofacial/synth.hpp"

namespace {

using namespace orofacial;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::kIo, "failed to write standard output");
  } else {
    io::write_text_file(out_path, content);
  }
}

kin::MouthLandmarks parse_landmarks(const std::string& text) {
  std::vector<std::size_t> idx;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size() || v >= kLandmarkCount) {
      throw Error(ErrorCode::kUsage, "--mouth-landmarks expects indices in [0, 67]");
    }
    idx.push_back(v);
  }
  if (idx.size() != 4) throw Error(ErrorCode::kUsage, "--mouth-landmarks expects top,bottom,left,right");
  return {idx[0], idx[1], idx[2], idx[3]};
}

struct ExtractArgs {
  std::string manifest;
  std::string dim = "2d";
  bool smooth = false;
  int gap_max = 5;
  double max_invalid = 0.2;
  double rest_window = 5.0;
  std::string landmarks = "51,57,48,54";
  std::string out;
  std::string format = "delimited";
  unsigned jobs = 0;
};

int run_extract(const ExtractArgs& a) {
  pipeline::ExtractOptions opt;
  if (a.dim == "2d") opt.dims = {Dim::k2D};
  else if (a.dim == "3d") opt.dims = {Dim::k3D};
  else opt.dims = {Dim::k2D, Dim::k3D};
  opt.features.smooth = a.smooth;
  opt.features.landmarks = parse_landmarks(a.landmarks);
  opt.gap.max_gap = a.gap_max;
  opt.gap.max_invalid_fraction = a.max_invalid;
  opt.rest_window = a.rest_window;
  opt.jobs = a.jobs > 0 ? a.jobs : pipeline::default_jobs();

  const CohortManifest manifest = io::load_manifest(a.manifest);
  const auto result = pipeline::extract_manifest(manifest, opt);
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " recording(s) failed:\n";
    for (const auto& f : result.failures) {
      std::cerr << "  " << f.subject_id << " " << to_string(f.task) << " ["
                << to_string(f.code) << "] " << f.message << '\n';
    }
    return exit_status(result.failures.front().code);
  }
  std::ostringstream table;
  io::write_feature_table(result.rows, table, *io::parse_format(a.format));
  emit(a.out, table.str());
  std::cerr << "extracted " << result.rows.size() << " repetition row(s) from "
            << manifest.entries.size() << " manifest entr" << (manifest.entries.size() == 1 ? "y" : "ies")
            << '\n';
  return 0;
}

struct AnalyzeArgs {
  std::string features;
  std::string manifest;
  std::string aggregation = "per_subject";
  std::string filter = "all";
  std::string format = "delimited";
  std::string out;
};

int run_analyze(const AnalyzeArgs& a) {
  const std::string text = io::read_text_file(a.features);
  const auto first = text.find_first_not_of(" \t\r\n");
  const io::Format in_format =
      first != std::string::npos && text[first] == '{' ? io::Format::kStructured : io::Format::kDelimited;
  std::istringstream in(text);
  std::vector<FeatureRow> rows;
  try {
    rows = io::parse_feature_table(in, in_format);
  } catch (const Error& e) {
    throw Error(e.code(), a.features + ": " + e.what());
  }
  const CohortManifest manifest = io::load_manifest(a.manifest);
  auto smd_rows = stats::cohort_analysis(rows, manifest, *stats::parse_aggregation(a.aggregation));
  if (a.filter == "medium-large") smd_rows = stats::filter_medium_large(smd_rows);
  std::ostringstream report;
  io::write_smd_report(smd_rows, report, *io::parse_format(a.format));
  emit(a.out, report.str());
  return 0;
}

struct SynthArgs {
  std::string params;
  std::uint64_t seed = 1;
  std::string out_dir;
};

int run_synth(const SynthArgs& a) {
  synth::CohortParams params;
  if (!a.params.empty()) {
    std::istringstream in(io::read_text_file(a.params));
    try {
      params = synth::parse_cohort_params(in);
    } catch (const Error& e) {
      throw Error(e.code(), a.params + ": " + e.what());
    }
  }
  const auto cohort = synth::gen_cohort(params, a.seed);
  std::cout << synth::write_cohort(cohort, a.out_dir) << '\n';
  return 0;
}

struct SmdArgs {
  double mu1 = 0, sd1 = 0, mu2 = 0, sd2 = 0;
  int n1 = 0, n2 = 0;
};

int run_smd(const SmdArgs& a) {
  const double v = stats::smd_from_summary(a.mu1, a.sd1, a.n1, a.mu2, a.sd2, a.n2);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::cout << "SMD=" << buf << " class=" << stats::to_string(stats::classify_smd(v)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orofacial kinematic features and group effect sizes"};
  app.require_subcommand(1);

  const std::vector<std::string> formats = {"delimited", "structured"};

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract per-repetition features from a cohort manifest");
  extract->add_option("manifest", ex.manifest, "Cohort manifest (JSON)")->required();
  extract->add_option("--dim", ex.dim, "Landmark dimensionality")
      ->check(CLI::IsMember({"2d", "3d", "both"}))
      ->capture_default_str();
  extract->add_flag("--smooth", ex.smooth, "3-point moving average before differentiation");
  extract->add_option("--gap-max", ex.gap_max, "Longest depth gap (frames) filled by interpolation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  extract->add_option("--max-invalid", ex.max_invalid, "Largest tolerated fraction of invalid frames")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  extract->add_option("--rest-window", ex.rest_window, "REST normalization window (s)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  extract->add_option("--mouth-landmarks", ex.landmarks, "Indices top,bottom,left,right")
      ->capture_default_str();
  extract->add_option("--format", ex.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  extract->add_option("--jobs", ex.jobs, "Worker threads (default $OROFACIAL_JOBS or 1)");
  extract->add_option("--out", ex.out, "Output file (default stdout)");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Standardized mean differences between HC and PD");
  analyze->add_option("features", an.features, "Feature table")->required();
  analyze->add_option("manifest", an.manifest, "Cohort manifest")->required();
  analyze->add_option("--aggregation", an.aggregation, "Statistical unit")
      ->check(CLI::IsMember({"per_subject", "per_repetition"}))
      ->capture_default_str();
  analyze->add_option("--filter", an.filter, "Row filter")
      ->check(CLI::IsMember({"all", "medium-large"}))
      ->capture_default_str();
  analyze->add_option("--format", an.format, "Report format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  analyze->add_option("--out", an.out, "Output file (default stdout)");

  SynthArgs sy;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic cohort");
  synth_cmd->add_option("params", sy.params, "Cohort parameter file (JSON, optional)");
  synth_cmd->add_option("--seed", sy.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--out-dir", sy.out_dir, "Output directory")->required();

  SmdArgs sm;
  auto* smd = app.add_subcommand("smd", "SMD from group summary statistics");
  smd->add_option("--mu1", sm.mu1, "HC mean")->required();
  smd->add_option("--sd1", sm.sd1, "HC standard deviation")->required();
  smd->add_option("--n1", sm.n1, "HC size")->required();
  smd->add_option("--mu2", sm.mu2, "PD mean")->required();
  smd->add_option("--sd2", sm.sd2, "PD standard deviation")->required();
  smd->add_option("--n2", sm.n2, "PD size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*extract) return run_extract(ex);
    if (*analyze) return run_analyze(an);
    if (*synth_cmd) return run_synth(sy);
    if (*smd) return run_smd(sm);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
