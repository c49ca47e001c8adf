#include "orofacial/model.hpp"

#include <string>

#include "orofacial/error.hpp"

namespace orofacial {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "delta_TB",   "max_vel_TB", "min_vel_TB", "max_acc_TB", "min_acc_TB",
    "delta_WM",   "max_vel_WM", "min_vel_WM", "max_acc_WM", "min_acc_WM",
    "mean_Area",  "delta_Area", "ccc_Area",
};

}  // namespace

std::string_view to_string(Group g) { return g == Group::kHC ? "HC" : "PD"; }

std::string_view to_string(Task t) {
  switch (t) {
    case Task::kBBP: return "BBP";
    case Task::kPA: return "PA";
    case Task::kBigSmile: return "BIGSMILE";
    case Task::kRest: return "REST";
  }
  return "?";
}

std::string_view to_string(Dim d) { return d == Dim::k2D ? "2d" : "3d"; }

std::optional<Group> parse_group(std::string_view s) {
  if (s == "HC") return Group::kHC;
  if (s == "PD") return Group::kPD;
  return std::nullopt;
}

std::optional<Task> parse_task(std::string_view s) {
  if (s == "BBP") return Task::kBBP;
  if (s == "PA") return Task::kPA;
  if (s == "BIGSMILE") return Task::kBigSmile;
  if (s == "REST") return Task::kRest;
  return std::nullopt;
}

std::optional<Dim> parse_dim(std::string_view s) {
  if (s == "2d" || s == "2D") return Dim::k2D;
  if (s == "3d" || s == "3D") return Dim::k3D;
  return std::nullopt;
}

std::string_view to_string(Feature f) { return kFeatureNames[static_cast<std::size_t>(f)]; }

std::optional<Feature> parse_feature(std::string_view s) {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kFeatureNames[i] == s) return kAllFeatures[i];
  }
  return std::nullopt;
}

void validate_intrinsics(const CameraIntrinsics& k) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kValidation, "invalid intrinsics: " + what);
  };
  if (!(std::isfinite(k.fx) && std::isfinite(k.fy) && std::isfinite(k.cx) && std::isfinite(k.cy))) {
    fail("non-finite parameter");
  }
  if (k.width <= 0 || k.height <= 0) fail("sensor size must be positive");
  if (k.fx <= 0.0) fail("fx must be > 0");
  if (k.fy <= 0.0) fail("fy must be > 0");
  if (!(k.cx > 0.0 && k.cx < k.width)) fail("cx outside (0, width)");
  if (!(k.cy > 0.0 && k.cy < k.height)) fail("cy outside (0, height)");
}

std::string Violation::to_string() const {
  if (!frame) return message;
  return message + " @" + std::to_string(*frame);
}

std::vector<Violation> validate_trajectory(const Trajectory& t) {
  std::vector<Violation> out;
  if (!(t.nominal_fps >= 10.0 && t.nominal_fps <= 120.0)) {
    out.push_back({std::nullopt, "nominal fps " + std::to_string(t.nominal_fps) +
                                     " outside [10, 120]"});
  }
  for (std::size_t k = 0; k < t.frames.size(); ++k) {
    const LandmarkFrame& f = t.frames[k];
    if (!std::isfinite(f.timestamp) || f.timestamp < 0.0) {
      out.push_back({k, "invalid timestamp"});
    }
    if (k > 0 && !(f.timestamp > t.frames[k - 1].timestamp)) {
      out.push_back({k, "non-monotonic timestamp"});
    }
    if (f.points.size() != kLandmarkCount) {
      out.push_back({k, "landmark count " + std::to_string(f.points.size()) + " ≠ 68"});
    }
    if (f.depth) {
      if (t.dim == Dim::k3D) {
        out.push_back({k, "depth array on 3d frame"});
      } else if (f.depth->size() != kLandmarkCount) {
        out.push_back({k, "depth count " + std::to_string(f.depth->size()) + " ≠ 68"});
      } else {
        for (double z : *f.depth) {
          if (!std::isfinite(z) || z < 0.0) {
            out.push_back({k, "negative or non-finite depth"});
            break;
          }
        }
      }
    }
    if (f.valid && f.valid->size() != kLandmarkCount) {
      out.push_back({k, "validity count " + std::to_string(f.valid->size()) + " ≠ 68"});
    }
    bool finite = true;
    bool in_bounds = true;
    for (const Vec3& p : f.points) {
      finite = finite && std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
      if (t.dim == Dim::k2D && t.resolution) {
        in_bounds = in_bounds && p.x >= 0.0 && p.x < t.resolution->width && p.y >= 0.0 &&
                    p.y < t.resolution->height;
      }
    }
    if (!finite) out.push_back({k, "non-finite landmark coordinate"});
    if (!in_bounds) out.push_back({k, "landmark outside image bounds"});
  }
  return out;
}

}  // namespace orofacial
