#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orofacial {

/// Number of landmarks in the iBUG 300-W markup.
inline constexpr std::size_t kLandmarkCount = 68;

// 0-based iBUG 300-W indices of the landmarks used for mouth properties.
// "Left"/"right" are image-left/image-right (camera frame), not subject-left.
namespace landmark {
inline constexpr std::size_t kMouthLeftCorner = 48;   // image-left oral commissure
inline constexpr std::size_t kUpperLipTop = 51;       // outer contour, midline
inline constexpr std::size_t kMouthRightCorner = 54;  // image-right oral commissure
inline constexpr std::size_t kLowerLipBottom = 57;    // outer contour, midline
inline constexpr std::size_t kMouthFirst = 48;
inline constexpr std::size_t kMouthLast = 67;
}  // namespace landmark

enum class Group { kHC, kPD };
enum class Task { kBBP, kPA, kBigSmile, kRest };
enum class Dim { k2D, k3D };

std::string_view to_string(Group g);
std::string_view to_string(Task t);
std::string_view to_string(Dim d);
std::optional<Group> parse_group(std::string_view s);
std::optional<Task> parse_task(std::string_view s);
std::optional<Dim> parse_dim(std::string_view s);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
};

inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

struct ImageSize {
  int width = 0;
  int height = 0;
  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

/// One video frame of 68 landmarks.
///
/// For 2D trajectories `points` holds pixel coordinates (u, v) with z = 0 and
/// `depth` optionally carries the depth reading in meters sampled at each
/// landmark (0 = no reading). For 3D trajectories `points` holds world
/// coordinates in meters and `depth` is unused.
struct LandmarkFrame {
  double timestamp = 0.0;
  std::vector<Vec3> points;
  std::optional<std::vector<double>> depth;
  std::optional<std::vector<bool>> valid;

  bool is_valid(std::size_t i) const { return !valid || (*valid)[i]; }
  friend bool operator==(const LandmarkFrame&, const LandmarkFrame&) = default;
};

struct Trajectory {
  std::string subject_id;
  Group group = Group::kHC;
  Task task = Task::kRest;
  Dim dim = Dim::k2D;
  double nominal_fps = 30.0;
  std::optional<ImageSize> resolution;
  std::optional<int> repetition;
  std::vector<LandmarkFrame> frames;

  double duration() const {
    return frames.empty() ? 0.0 : frames.back().timestamp - frames.front().timestamp;
  }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;
  friend bool operator==(const CameraIntrinsics&, const CameraIntrinsics&) = default;
};

/// Throws Error(kValidation) unless focal lengths are positive and the
/// principal point lies strictly inside the sensor.
void validate_intrinsics(const CameraIntrinsics& k);

struct RepetitionAnnotation {
  Task task = Task::kBBP;
  int repetition_index = 1;
  double start = 0.0;
  double end = 0.0;
  friend bool operator==(const RepetitionAnnotation&, const RepetitionAnnotation&) = default;
};

/// The thirteen per-repetition kinematic features, in frozen column order.
enum class Feature {
  kDeltaTB,
  kMaxVelTB,
  kMinVelTB,
  kMaxAccTB,
  kMinAccTB,
  kDeltaWM,
  kMaxVelWM,
  kMinVelWM,
  kMaxAccWM,
  kMinAccWM,
  kMeanArea,
  kDeltaArea,
  kCccArea,
};

inline constexpr std::size_t kFeatureCount = 13;

inline constexpr std::array<Feature, kFeatureCount> kAllFeatures = {
    Feature::kDeltaTB,  Feature::kMaxVelTB, Feature::kMinVelTB, Feature::kMaxAccTB,
    Feature::kMinAccTB, Feature::kDeltaWM,  Feature::kMaxVelWM, Feature::kMinVelWM,
    Feature::kMaxAccWM, Feature::kMinAccWM, Feature::kMeanArea, Feature::kDeltaArea,
    Feature::kCccArea,
};

std::string_view to_string(Feature f);
std::optional<Feature> parse_feature(std::string_view s);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct Violation {
  std::optional<std::size_t> frame;
  std::string message;

  /// "<message> @<frame>" or just the message for trajectory-level issues.
  std::string to_string() const;
};

/// Lists every invariant violation of `t`; an empty result means valid.
std::vector<Violation> validate_trajectory(const Trajectory& t);

}  // namespace orofacial
