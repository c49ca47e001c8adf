#include "orofacial/statistics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "orofacial/error.hpp"

namespace orofacial::stats {

std::string_view to_string(Magnitude m) {
  switch (m) {
    case Magnitude::kSmall: return "small";
    case Magnitude::kMedium: return "medium";
    case Magnitude::kLarge: return "large";
  }
  return "?";
}

std::string_view to_string(Aggregation a) {
  return a == Aggregation::kPerSubject ? "per_subject" : "per_repetition";
}

std::optional<Aggregation> parse_aggregation(std::string_view s) {
  if (s == "per_subject" || s == "per-subject") return Aggregation::kPerSubject;
  if (s == "per_repetition" || s == "per-repetition") return Aggregation::kPerRepetition;
  return std::nullopt;
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double smd_from_summary(double mean1, double sd1, int n1, double mean2, double sd2, int n2) {
  if (n1 < 2 || n2 < 2) {
    throw Error(ErrorCode::kInsufficientGroups, "each group needs at least 2 elements");
  }
  if (sd1 < 0.0 || sd2 < 0.0) {
    throw Error(ErrorCode::kValidation, "standard deviations must be non-negative");
  }
  const double pooled_var =
      ((n1 - 1) * sd1 * sd1 + (n2 - 1) * sd2 * sd2) / static_cast<double>(n1 + n2 - 2);
  if (!(pooled_var > 0.0)) {
    throw Error(ErrorCode::kDegenerateGroups, "pooled variance is zero");
  }
  return (mean1 - mean2) / std::sqrt(pooled_var);
}

double smd(std::span<const double> g1, std::span<const double> g2) {
  if (g1.size() < 2 || g2.size() < 2) {
    throw Error(ErrorCode::kInsufficientGroups, "each group needs at least 2 elements");
  }
  return smd_from_summary(mean(g1), sample_sd(g1), static_cast<int>(g1.size()), mean(g2),
                          sample_sd(g2), static_cast<int>(g2.size()));
}

Magnitude classify_smd(double v) {
  const double a = std::abs(v);
  if (a >= 0.8) return Magnitude::kLarge;
  if (a >= 0.5) return Magnitude::kMedium;
  return Magnitude::kSmall;
}

std::vector<SmdRow> cohort_analysis(const std::vector<FeatureRow>& rows,
                                    const CohortManifest& manifest, Aggregation aggregation) {
  for (const auto& r : rows) {
    const auto g = manifest.group_of(r.subject_id);
    if (!g) {
      throw Error(ErrorCode::kValidation,
                  "subject " + r.subject_id + " in feature table is not in the manifest");
    }
    if (*g != r.group) {
      throw Error(ErrorCode::kValidation,
                  "group of subject " + r.subject_id + " disagrees with the manifest");
    }
  }

  // (task, dim) combinations present, in canonical enum order.
  std::set<std::pair<Task, Dim>> combos;
  for (const auto& r : rows) combos.insert({r.task, r.dim});

  std::vector<SmdRow> out;
  for (const auto& [task, dim] : combos) {
    for (Feature feature : kAllFeatures) {
      std::vector<double> hc, pd;
      if (aggregation == Aggregation::kPerRepetition) {
        for (const auto& r : rows) {
          if (r.task != task || r.dim != dim) continue;
          const double v = r.features[feature];
          if (!std::isfinite(v)) continue;
          (r.group == Group::kHC ? hc : pd).push_back(v);
        }
      } else {
        // Subjects in order of first appearance keep the output deterministic.
        std::vector<std::string> order;
        std::map<std::string, std::pair<Group, std::vector<double>>> per_subject;
        for (const auto& r : rows) {
          if (r.task != task || r.dim != dim) continue;
          auto [it, inserted] = per_subject.try_emplace(r.subject_id, r.group, std::vector<double>{});
          if (inserted) order.push_back(r.subject_id);
          const double v = r.features[feature];
          if (std::isfinite(v)) it->second.second.push_back(v);
        }
        for (const auto& id : order) {
          const auto& [group, values] = per_subject.at(id);
          if (values.empty()) continue;
          (group == Group::kHC ? hc : pd).push_back(mean(values));
        }
      }
      if (hc.size() < 2 || pd.size() < 2) {
        std::ostringstream msg;
        msg << to_string(task) << " " << to_string(feature) << " " << to_string(dim) << ": "
            << hc.size() << " HC and " << pd.size() << " PD "
            << (aggregation == Aggregation::kPerSubject ? "subjects" : "repetitions")
            << ", need at least 2 per group";
        throw Error(ErrorCode::kInsufficientGroups, msg.str());
      }
      SmdRow row;
      row.task = task;
      row.feature = feature;
      row.dim = dim;
      row.hc_mean = mean(hc);
      row.hc_sd = sample_sd(hc);
      row.hc_n = static_cast<int>(hc.size());
      row.pd_mean = mean(pd);
      row.pd_sd = sample_sd(pd);
      row.pd_n = static_cast<int>(pd.size());
      if (row.hc_sd == 0.0 && row.pd_sd == 0.0) {
        // Both groups constant: no pooled scale to standardize by.
        row.smd = std::numeric_limits<double>::quiet_NaN();
        row.magnitude = Magnitude::kSmall;
      } else {
        row.smd =
            smd_from_summary(row.hc_mean, row.hc_sd, row.hc_n, row.pd_mean, row.pd_sd, row.pd_n);
        row.magnitude = classify_smd(row.smd);
      }
      out.push_back(row);
    }
  }
  return out;
}

std::vector<SmdRow> filter_medium_large(const std::vector<SmdRow>& rows) {
  std::set<std::pair<Task, Feature>> keep;
  for (const auto& r : rows) {
    if (r.magnitude != Magnitude::kSmall) keep.insert({r.task, r.feature});
  }
  std::vector<SmdRow> out;
  for (const auto& r : rows) {
    if (keep.count({r.task, r.feature})) out.push_back(r);
  }
  return out;
}

}  // namespace orofacial::stats
