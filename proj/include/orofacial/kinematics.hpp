#pragma once

#include <optional>
#include <span>
#include <vector>

#include "orofacial/model.hpp"

namespace orofacial::kin {

/// Landmark indices defining the mouth properties. Defaults follow the outer
/// lip contour of the iBUG 300-W markup.
struct MouthLandmarks {
  std::size_t top = landmark::kUpperLipTop;
  std::size_t bottom = landmark::kLowerLipBottom;
  std::size_t left = landmark::kMouthLeftCorner;
  std::size_t right = landmark::kMouthRightCorner;
};

struct MouthProperties {
  double tb = 0.0;          // vertical opening
  double wm = 0.0;          // horizontal opening
  double area_left = 0.0;   // triangle (top, bottom, left corner)
  double area_right = 0.0;  // triangle (top, bottom, right corner)
  double area = 0.0;        // area_left + area_right
};

struct PropertySeries {
  Dim dim = Dim::k2D;
  bool normalized = false;
  std::vector<double> timestamps;
  std::vector<double> tb;
  std::vector<double> wm;
  std::vector<double> area_left;
  std::vector<double> area_right;
  std::vector<double> area;

  std::size_t size() const { return timestamps.size(); }
};

struct NormalizationFactors {
  Dim dim = Dim::k2D;
  double mean_tb = 0.0;
  double mean_wm = 0.0;
  double mean_area_left = 0.0;
  double mean_area_right = 0.0;
  double mean_area = 0.0;
};

/// Properties of one frame, or nullopt when a required landmark is missing or
/// flagged invalid. In 2d only (x, y) are used.
std::optional<MouthProperties> mouth_properties(const LandmarkFrame& frame, Dim dim,
                                                const MouthLandmarks& lm = {});

/// Per-frame properties of a trajectory; frames with undefined properties are
/// dropped.
PropertySeries property_series(const Trajectory& t, const MouthLandmarks& lm = {});

/// Mean of each property over the valid frames of a REST window. Throws
/// Error(kTooFewSamples) below three valid frames and Error(kDegenerateRest)
/// when any mean is not positive.
NormalizationFactors rest_factors(const Trajectory& rest, const MouthLandmarks& lm = {});

/// Divides each property by its rest mean. Throws Error(kDimensionMismatch)
/// when the dimensionalities differ.
PropertySeries normalize(const PropertySeries& series, const NormalizationFactors& f);

/// First derivative on a possibly uneven grid: central differences
/// (v[i+1] - v[i-1]) / (t[i+1] - t[i-1]) inside, one-sided differences at
/// both ends. Throws Error(kTooFewSamples) below three samples or
/// Error(kValidation) for non-increasing timestamps.
std::vector<double> differentiate(std::span<const double> values, std::span<const double> t);

/// Centred 3-point moving average; the end points average their two
/// available samples.
std::vector<double> moving_average3(std::span<const double> values);

/// Lin's concordance correlation coefficient with population moments:
/// 2 cov(x, y) / (var(x) + var(y) + (mean(x) - mean(y))^2).
/// Throws Error(kUndefinedCcc) when both series are constant and
/// Error(kTooFewSamples) for unequal or too short inputs.
double ccc(std::span<const double> x, std::span<const double> y);

/// Pearson correlation (population moments); NaN when either side is constant.
double pearson(std::span<const double> x, std::span<const double> y);

inline constexpr std::size_t kMinFeatureFrames = 5;

struct FeatureOptions {
  MouthLandmarks landmarks;
  /// Apply moving_average3 to the normalized properties before
  /// differentiation.
  bool smooth = false;
  /// Report NaN for ccc_Area instead of throwing when both areas are constant.
  bool allow_undefined_ccc = false;
};

/// The 13 kinematic features of one repetition, normalized by `f`.
FeatureVector extract_features(const Trajectory& rep, const NormalizationFactors& f,
                               const FeatureOptions& options = {});

/// Same, starting from an already normalized property series.
FeatureVector features_from_series(const PropertySeries& normalized,
                                   const FeatureOptions& options = {});

}  // namespace orofacial::kin
