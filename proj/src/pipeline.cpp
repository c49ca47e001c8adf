#include "orofacial/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <thread>

#include "orofacial/io.hpp"
#include "orofacial/segmentation.hpp"

namespace orofacial::pipeline {

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(jobs, 1u), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

Trajectory as_dim(const Trajectory& t, Dim dim, const std::optional<CameraIntrinsics>& k,
                  const recon::GapPolicy& gap) {
  if (dim == Dim::k2D) {
    if (t.dim != Dim::k2D) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "2D requested but " + t.subject_id + " " + std::string(to_string(t.task)) +
                      " holds 3d landmarks");
    }
    return t;
  }
  if (t.dim == Dim::k3D) return t;
  const bool has_depth =
      !t.frames.empty() && std::all_of(t.frames.begin(), t.frames.end(),
                                       [](const LandmarkFrame& f) { return f.depth.has_value(); });
  if (!k || !has_depth) {
    throw Error(ErrorCode::kMissingDepth,
                "3D requested but no depth" + std::string(k ? "" : " intrinsics") + " for " +
                    t.subject_id + " " + std::string(to_string(t.task)));
  }
  return recon::reconstruct_trajectory(t, *k, gap);
}

}  // namespace

unsigned default_jobs() {
  if (const char* env = std::getenv("OROFACIAL_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 256) return static_cast<unsigned>(v);
  }
  return 1;
}

CohortRecording load_recording(const CohortManifest& manifest, const ManifestEntry& entry) {
  CohortRecording rec;
  rec.entry = entry;
  rec.recording = io::load_landmark_stream(manifest.resolve(entry.landmark_file));
  rec.recording.subject_id = entry.subject_id;
  rec.recording.group = entry.group;
  rec.recording.task = entry.task;
  if (entry.annotation_file) {
    rec.annotations = io::load_annotations(manifest.resolve(*entry.annotation_file));
  }
  if (entry.intrinsics_file) {
    rec.intrinsics = io::load_intrinsics(manifest.resolve(*entry.intrinsics_file));
  }
  if (entry.task != Task::kRest) {
    if (entry.rest_file.empty()) {
      throw Error(ErrorCode::kMissingRest, "no REST recording for subject " + entry.subject_id);
    }
    const std::string path = manifest.resolve(entry.rest_file);
    if (!std::filesystem::exists(path)) {
      throw Error(ErrorCode::kMissingRest,
                  "REST recording for subject " + entry.subject_id + " not found: " + path);
    }
    auto rest = std::make_shared<Trajectory>(io::load_landmark_stream(path));
    rest->subject_id = entry.subject_id;
    rest->group = entry.group;
    rest->task = Task::kRest;
    rec.rest = std::move(rest);
  }
  return rec;
}

std::vector<FeatureRow> extract_recording(const CohortRecording& rec, const ExtractOptions& options) {
  if (rec.entry.task == Task::kRest) return {};
  if (!rec.rest) {
    throw Error(ErrorCode::kMissingRest, "no REST recording for subject " + rec.entry.subject_id);
  }
  std::vector<FeatureRow> rows;
  for (Dim dim : options.dims) {
    const Trajectory rest = as_dim(*rec.rest, dim, rec.intrinsics, options.gap);
    const Trajectory task = as_dim(rec.recording, dim, rec.intrinsics, options.gap);
    const auto factors =
        kin::rest_factors(seg::rest_window(rest, options.rest_window), options.features.landmarks);

    std::vector<Trajectory> reps;
    if (rec.annotations.empty()) {
      reps.push_back(task);
      reps.back().repetition = 1;
    } else {
      reps = seg::split_repetitions(task, rec.annotations);
    }
    for (const auto& rep : reps) {
      FeatureRow row;
      row.subject_id = rec.entry.subject_id;
      row.group = rec.entry.group;
      row.task = rec.entry.task;
      row.dim = dim;
      row.repetition = rep.repetition.value_or(1);
      row.features = kin::extract_features(rep, factors, options.features);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

ExtractionResult extract_manifest(const CohortManifest& manifest, const ExtractOptions& options) {
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    if (manifest.entries[i].task != Task::kRest) todo.push_back(i);
  }
  std::vector<std::vector<FeatureRow>> rows(todo.size());
  std::vector<std::optional<EntryFailure>> failures(todo.size());
  parallel_for(todo.size(), options.jobs, [&](std::size_t k) {
    const auto& entry = manifest.entries[todo[k]];
    try {
      rows[k] = extract_recording(load_recording(manifest, entry), options);
    } catch (const Error& e) {
      failures[k] = EntryFailure{todo[k], entry.subject_id, entry.task, e.code(), e.what()};
    } catch (const std::exception& e) {
      failures[k] = EntryFailure{todo[k], entry.subject_id, entry.task, ErrorCode::kIo, e.what()};
    }
  });
  ExtractionResult result;
  for (std::size_t k = 0; k < todo.size(); ++k) {
    if (failures[k]) {
      result.failures.push_back(*failures[k]);
    } else {
      for (auto& r : rows[k]) result.rows.push_back(std::move(r));
    }
  }
  return result;
}

std::vector<FeatureRow> extract_cohort(const std::vector<CohortRecording>& recordings,
                                       const ExtractOptions& options) {
  std::vector<std::vector<FeatureRow>> rows(recordings.size());
  std::vector<std::exception_ptr> errors(recordings.size());
  parallel_for(recordings.size(), options.jobs, [&](std::size_t i) {
    try {
      rows[i] = extract_recording(recordings[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  std::vector<FeatureRow> out;
  for (std::size_t i = 0; i < recordings.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& r : rows[i]) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace orofacial::pipeline
