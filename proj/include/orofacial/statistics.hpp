#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "orofacial/cohort.hpp"
#include "orofacial/model.hpp"

namespace orofacial::stats {

enum class Magnitude { kSmall, kMedium, kLarge };
enum class Aggregation { kPerSubject, kPerRepetition };

std::string_view to_string(Magnitude m);
std::string_view to_string(Aggregation a);
std::optional<Aggregation> parse_aggregation(std::string_view s);

/// Group comparison for one (task, feature, dimensionality). Group 1 is
/// always HC, so smd is HC minus PD.
struct SmdRow {
  Task task = Task::kBBP;
  Feature feature = Feature::kDeltaTB;
  Dim dim = Dim::k2D;
  double hc_mean = 0.0;
  double hc_sd = 0.0;
  int hc_n = 0;
  double pd_mean = 0.0;
  double pd_sd = 0.0;
  int pd_n = 0;
  double smd = 0.0;
  Magnitude magnitude = Magnitude::kSmall;
};

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1 denominator).
double sample_sd(std::span<const double> v);

/// Standardized mean difference with pooled sample standard deviation:
///
///   (mean1 - mean2) / sqrt(((n1 - 1) s1^2 + (n2 - 1) s2^2) / (n1 + n2 - 2))
///
/// Throws Error(kInsufficientGroups) when a group has fewer than two values
/// and Error(kDegenerateGroups) when the pooled variance is zero.
double smd(std::span<const double> g1, std::span<const double> g2);

/// The same formula evaluated from summary statistics.
double smd_from_summary(double mean1, double sd1, int n1, double mean2, double sd2, int n2);

/// |v| < 0.5 small, [0.5, 0.8) medium, >= 0.8 large.
Magnitude classify_smd(double v);

/// Computes one SmdRow per (task, feature, dimensionality) present in `rows`.
/// Group membership comes from `manifest`; a row whose subject is missing
/// from the manifest or whose group disagrees raises Error(kValidation).
/// Under kPerSubject each subject's repetitions are averaged first.
/// Non-finite feature values are skipped. When both groups are constant the
/// row carries smd = NaN and magnitude small.
std::vector<SmdRow> cohort_analysis(const std::vector<FeatureRow>& rows,
                                    const CohortManifest& manifest,
                                    Aggregation aggregation = Aggregation::kPerSubject);

/// Keeps every row of a (task, feature) pair for which at least one
/// dimensionality reaches a medium or large difference.
std::vector<SmdRow> filter_medium_large(const std::vector<SmdRow>& rows);

}  // namespace orofacial::stats
