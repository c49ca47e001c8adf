#include "orofacial/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orofacial/error.hpp"

namespace orofacial::kin {

namespace {

double triangle_area(Vec3 a, Vec3 b, Vec3 c, Dim dim) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  if (dim == Dim::k2D) return 0.5 * std::abs(ab.x * ac.y - ab.y * ac.x);
  return 0.5 * norm(cross(ab, ac));
}

double distance(Vec3 a, Vec3 b, Dim dim) {
  Vec3 d = a - b;
  if (dim == Dim::k2D) d.z = 0.0;
  return norm(d);
}

std::vector<double> divided(const std::vector<double>& v, double by) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [by](double x) { return x / by; });
  return out;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

void require_pair(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kTooFewSamples, "series lengths differ");
  }
  if (x.size() < min_n) {
    throw Error(ErrorCode::kTooFewSamples, "need at least " + std::to_string(min_n) + " samples");
  }
}

struct Moments {
  double mx, my, vx, vy, cxy;
};

Moments population_moments(std::span<const double> x, std::span<const double> y) {
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double vx = 0.0, vy = 0.0, cxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    vx += dx * dx;
    vy += dy * dy;
    cxy += dx * dy;
  }
  const double n = static_cast<double>(x.size());
  return {mx, my, vx / n, vy / n, cxy / n};
}

void span_features(const std::vector<double>& v, const std::vector<double>& t, FeatureVector& fv,
                   Feature delta, Feature max_vel, Feature min_vel, Feature max_acc,
                   Feature min_acc) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  fv[delta] = *hi - *lo;
  const auto vel = differentiate(v, t);
  const auto acc = differentiate(vel, t);
  const auto [vlo, vhi] = std::minmax_element(vel.begin(), vel.end());
  const auto [alo, ahi] = std::minmax_element(acc.begin(), acc.end());
  fv[max_vel] = *vhi;
  fv[min_vel] = *vlo;
  fv[max_acc] = *ahi;
  fv[min_acc] = *alo;
}

}  // namespace

std::optional<MouthProperties> mouth_properties(const LandmarkFrame& frame, Dim dim,
                                                const MouthLandmarks& lm) {
  for (std::size_t idx : {lm.top, lm.bottom, lm.left, lm.right}) {
    if (idx >= frame.points.size()) return std::nullopt;
    if (frame.valid && (idx >= frame.valid->size() || !(*frame.valid)[idx])) return std::nullopt;
  }
  const Vec3 top = frame.points[lm.top];
  const Vec3 bottom = frame.points[lm.bottom];
  const Vec3 left = frame.points[lm.left];
  const Vec3 right = frame.points[lm.right];

  MouthProperties p;
  p.tb = distance(top, bottom, dim);
  p.wm = distance(left, right, dim);
  p.area_left = triangle_area(top, bottom, left, dim);
  p.area_right = triangle_area(top, bottom, right, dim);
  p.area = p.area_left + p.area_right;
  return p;
}

PropertySeries property_series(const Trajectory& t, const MouthLandmarks& lm) {
  PropertySeries s;
  s.dim = t.dim;
  for (const auto& f : t.frames) {
    const auto p = mouth_properties(f, t.dim, lm);
    if (!p) continue;
    s.timestamps.push_back(f.timestamp);
    s.tb.push_back(p->tb);
    s.wm.push_back(p->wm);
    s.area_left.push_back(p->area_left);
    s.area_right.push_back(p->area_right);
    s.area.push_back(p->area);
  }
  return s;
}

NormalizationFactors rest_factors(const Trajectory& rest, const MouthLandmarks& lm) {
  const PropertySeries s = property_series(rest, lm);
  if (s.size() < 3) {
    throw Error(ErrorCode::kTooFewSamples,
                "REST window of " + rest.subject_id + " has " + std::to_string(s.size()) +
                    " valid frame(s), need at least 3");
  }
  NormalizationFactors f;
  f.dim = rest.dim;
  f.mean_tb = mean_of(s.tb);
  f.mean_wm = mean_of(s.wm);
  f.mean_area_left = mean_of(s.area_left);
  f.mean_area_right = mean_of(s.area_right);
  f.mean_area = mean_of(s.area);
  for (double m : {f.mean_tb, f.mean_wm, f.mean_area_left, f.mean_area_right, f.mean_area}) {
    if (!(m > 0.0)) {
      throw Error(ErrorCode::kDegenerateRest,
                  "REST mouth property of " + rest.subject_id + " has non-positive mean");
    }
  }
  return f;
}

PropertySeries normalize(const PropertySeries& series, const NormalizationFactors& f) {
  if (series.dim != f.dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string("cannot normalize ") + std::string(to_string(series.dim)) +
                    " properties with " + std::string(to_string(f.dim)) + " rest factors");
  }
  PropertySeries out;
  out.dim = series.dim;
  out.normalized = true;
  out.timestamps = series.timestamps;
  out.tb = divided(series.tb, f.mean_tb);
  out.wm = divided(series.wm, f.mean_wm);
  out.area_left = divided(series.area_left, f.mean_area_left);
  out.area_right = divided(series.area_right, f.mean_area_right);
  out.area = divided(series.area, f.mean_area);
  return out;
}

std::vector<double> differentiate(std::span<const double> values, std::span<const double> t) {
  const std::size_t n = values.size();
  if (t.size() != n) throw Error(ErrorCode::kTooFewSamples, "values and timestamps differ in length");
  if (n < 3) throw Error(ErrorCode::kTooFewSamples, "differentiation needs at least 3 samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t[i] > t[i - 1])) {
      throw Error(ErrorCode::kValidation, "timestamps must be strictly increasing");
    }
  }
  std::vector<double> d(n);
  d[0] = (values[1] - values[0]) / (t[1] - t[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (values[i + 1] - values[i - 1]) / (t[i + 1] - t[i - 1]);
  }
  d[n - 1] = (values[n - 1] - values[n - 2]) / (t[n - 1] - t[n - 2]);
  return d;
}

std::vector<double> moving_average3(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> out(n);
  if (n == 1) out[0] = values[0];
  if (n < 2) return out;
  out[0] = 0.5 * (values[0] + values[1]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (values[i - 1] + values[i] + values[i + 1]) / 3.0;
  }
  out[n - 1] = 0.5 * (values[n - 2] + values[n - 1]);
  return out;
}

double ccc(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y, 2);
  const Moments m = population_moments(x, y);
  const double denom = m.vx + m.vy + (m.mx - m.my) * (m.mx - m.my);
  if (m.vx == 0.0 && m.vy == 0.0) {
    throw Error(ErrorCode::kUndefinedCcc, "concordance undefined for two constant series");
  }
  return std::clamp(2.0 * m.cxy / denom, -1.0, 1.0);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y, 2);
  const Moments m = population_moments(x, y);
  if (m.vx == 0.0 || m.vy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return m.cxy / std::sqrt(m.vx * m.vy);
}

FeatureVector features_from_series(const PropertySeries& normalized, const FeatureOptions& options) {
  if (normalized.size() < kMinFeatureFrames) {
    throw Error(ErrorCode::kTooFewSamples,
                "repetition has " + std::to_string(normalized.size()) +
                    " valid frame(s), need at least " + std::to_string(kMinFeatureFrames));
  }
  PropertySeries s = normalized;
  if (options.smooth) {
    s.tb = moving_average3(s.tb);
    s.wm = moving_average3(s.wm);
    s.area_left = moving_average3(s.area_left);
    s.area_right = moving_average3(s.area_right);
    s.area = moving_average3(s.area);
  }

  FeatureVector fv;
  span_features(s.tb, s.timestamps, fv, Feature::kDeltaTB, Feature::kMaxVelTB, Feature::kMinVelTB,
                Feature::kMaxAccTB, Feature::kMinAccTB);
  span_features(s.wm, s.timestamps, fv, Feature::kDeltaWM, Feature::kMaxVelWM, Feature::kMinVelWM,
                Feature::kMaxAccWM, Feature::kMinAccWM);
  const auto [lo, hi] = std::minmax_element(s.area.begin(), s.area.end());
  fv[Feature::kMeanArea] = mean_of(s.area);
  fv[Feature::kDeltaArea] = *hi - *lo;
  try {
    fv[Feature::kCccArea] = ccc(s.area_left, s.area_right);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUndefinedCcc || !options.allow_undefined_ccc) throw;
    fv[Feature::kCccArea] = std::numeric_limits<double>::quiet_NaN();
  }
  return fv;
}

FeatureVector extract_features(const Trajectory& rep, const NormalizationFactors& f,
                               const FeatureOptions& options) {
  return features_from_series(normalize(property_series(rep, options.landmarks), f), options);
}

}  // namespace orofacial::kin
