#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orofacial/cohort.hpp"
#include "orofacial/error.hpp"
#include "orofacial/kinematics.hpp"
#include "orofacial/reconstruction.hpp"

namespace orofacial::pipeline {

struct ExtractOptions {
  std::vector<Dim> dims = {Dim::k2D};
  kin::FeatureOptions features;
  recon::GapPolicy gap;
  double rest_window = 5.0;
  /// Worker threads; recordings are merged back in input order.
  unsigned jobs = 1;
};

/// Default worker count: $OROFACIAL_JOBS when set to a positive integer,
/// otherwise 1.
unsigned default_jobs();

/// Reads the files referenced by one manifest entry. A missing or unreadable
/// rest recording raises Error(kMissingRest) naming the subject.
CohortRecording load_recording(const CohortManifest& manifest, const ManifestEntry& entry);

/// Rest window, normalization, segmentation and the 13 features for every
/// repetition and requested dimensionality. 3d requires depth and
/// intrinsics; without them Error(kMissingDepth) is raised.
std::vector<FeatureRow> extract_recording(const CohortRecording& rec, const ExtractOptions& options);

struct EntryFailure {
  std::size_t entry_index = 0;
  std::string subject_id;
  Task task = Task::kBBP;
  ErrorCode code = ErrorCode::kValidation;
  std::string message;
};

struct ExtractionResult {
  std::vector<FeatureRow> rows;
  std::vector<EntryFailure> failures;
};

/// Loads and processes every non-REST manifest entry. Per-entry failures are
/// collected instead of aborting the run.
ExtractionResult extract_manifest(const CohortManifest& manifest, const ExtractOptions& options);

/// In-memory variant; throws the first failure in input order.
std::vector<FeatureRow> extract_cohort(const std::vector<CohortRecording>& recordings,
                                       const ExtractOptions& options);

}  // namespace orofacial::pipeline
