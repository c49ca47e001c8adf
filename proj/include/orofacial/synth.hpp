#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orofacial/cohort.hpp"
#include "orofacial/model.hpp"

namespace orofacial::synth {

/// Sinusoidal mouth motion. Amplitudes are fractions of the rest opening:
/// TB(t) = TB0 (1 + tb_amplitude sin(2 pi rate t)); the image-right corner
/// moves by wm_amplitude and the image-left corner by asymmetry * wm_amplitude
/// of the rest half-width.
struct MotionArchetype {
  double tb_amplitude = 0.5;
  double wm_amplitude = 0.2;
  double rate = 1.0;
  double asymmetry = 1.0;
  double jitter_sd = 0.0;
  std::uint64_t seed = 0;
};

/// Throws Error(kValidation) for negative amplitudes, amplitudes >= 1, a
/// rate outside (0, 5] Hz, asymmetry outside (0, 1] or negative jitter.
void validate(const MotionArchetype& a);

/// Placement of the synthetic face in the image and in front of the camera.
struct FaceGeometry {
  double center_u = 320.0;
  double center_v = 230.0;
  double scale = 1.0;      // 1.0 = 200 px face width
  double distance = 0.45;  // depth of the lip plane, meters
};

struct SyntheticRecording {
  Trajectory trajectory;
  /// Closed-form features of the noise-free motion normalized by the rest
  /// pose of the same face. Valid when the recording spans whole cycles.
  /// TB and WM features hold in 2d and 3d; area features are exact in 2d
  /// only, since the mouth corners sit behind the lip midline.
  FeatureVector expected;
};

/// One recording with motion starting at t = 0. Frames are sampled at
/// i / fps for i = 0 .. floor(duration * fps). With intrinsics the frames
/// carry consistent per-landmark depth.
SyntheticRecording gen_trajectory(const MotionArchetype& a, Task task, double duration, double fps,
                                  const std::optional<CameraIntrinsics>& intrinsics = std::nullopt,
                                  const FaceGeometry& face = {});

/// Closed-form normalized features for the motion of `a`.
FeatureVector expected_features(const MotionArchetype& a);

/// fx = fy = 600, principal point at the centre of a 640 x 480 sensor.
CameraIntrinsics default_intrinsics();

struct CohortParams {
  MotionArchetype hc{0.6, 0.3, 1.2, 0.9, 0.3, 0};
  MotionArchetype pd{0.39, 0.2, 1.0, 0.75, 0.3, 0};
  int n_hc = 12;
  int n_pd = 8;
  int reps = 5;
  std::vector<Task> tasks = {Task::kBBP, Task::kPA, Task::kBigSmile};
  double fps = 30.0;
  double rest_duration = 20.0;
  double cycles_per_rep = 2.0;
  double pause = 0.5;
  /// Log-normal sd of per-subject amplitude factors around the archetype.
  double subject_spread = 0.2;
  /// Log-normal sd of per-repetition amplitude factors around the subject.
  double repetition_spread = 0.05;
  std::optional<CameraIntrinsics> intrinsics = default_intrinsics();
};

void validate(const CohortParams& p);

/// JSON object whose keys mirror CohortParams; every key is optional.
CohortParams parse_cohort_params(std::istream& in);
void write_cohort_params(const CohortParams& p, std::ostream& out);

struct SyntheticCohort {
  CohortManifest manifest;
  std::vector<CohortRecording> recordings;
};

/// Builds a cohort in memory, deterministically for a given seed.
///
/// Per-subject amplitude and rate factors are log-normal around the group
/// archetype. Within each group the underlying normal draws are shifted and
/// scaled to zero mean and unit sample variance, so the realized group
/// difference equals the archetype difference and is not left to sampling
/// luck. Task profiles: BBP uses the archetype as is, PA scales
/// (tb, wm, rate) by (0.6, 0.2, 2.5) and BIGSMILE by (0.4, 1.0, 0.5); rates
/// are capped at 5 Hz.
SyntheticCohort gen_cohort(const CohortParams& p, std::uint64_t seed);

/// Writes landmark streams, annotations, intrinsics and manifest.json under
/// `dir` (created if needed) and returns the manifest path.
std::string write_cohort(const SyntheticCohort& cohort, const std::string& dir);

}  // namespace orofacial::synth
