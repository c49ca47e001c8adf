#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orofacial/model.hpp"

namespace orofacial {

/// One (subject, task) recording of a cohort. File paths are stored as
/// written in the manifest; relative paths resolve against `base_dir`.
struct ManifestEntry {
  std::string subject_id;
  Group group = Group::kHC;
  Task task = Task::kBBP;
  std::string landmark_file;
  std::optional<std::string> annotation_file;
  std::optional<std::string> intrinsics_file;
  std::string rest_file;
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct CohortManifest {
  std::string base_dir;
  std::vector<ManifestEntry> entries;

  std::optional<Group> group_of(const std::string& subject_id) const;
  std::string resolve(const std::string& path) const;
  friend bool operator==(const CohortManifest&, const CohortManifest&) = default;
};

/// One line of the feature table.
struct FeatureRow {
  std::string subject_id;
  Group group = Group::kHC;
  Task task = Task::kBBP;
  Dim dim = Dim::k2D;
  int repetition = 1;
  FeatureVector features;
  friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

/// Everything needed to extract features from one manifest entry.
struct CohortRecording {
  ManifestEntry entry;
  Trajectory recording;
  /// Empty when the whole recording is one repetition.
  std::vector<RepetitionAnnotation> annotations;
  std::shared_ptr<const Trajectory> rest;
  std::optional<CameraIntrinsics> intrinsics;
};

}  // namespace orofacial
