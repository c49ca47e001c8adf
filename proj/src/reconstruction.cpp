#include "orofacial/reconstruction.hpp"

#include <cmath>
#include <sstream>

#include "orofacial/error.hpp"

namespace orofacial::recon {

WorldPoint back_project(double u, double v, double z, const CameraIntrinsics& k) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::kInvalidDepth, "depth must be positive and finite");
  }
  return {(u - k.cx) * z / k.fx, (v - k.cy) * z / k.fy, z};
}

PixelPoint project(const WorldPoint& p, const CameraIntrinsics& k) {
  if (!(p.z > 0.0) || !std::isfinite(p.z)) {
    throw Error(ErrorCode::kInvalidDepth, "point must lie in front of the camera");
  }
  return {k.fx * p.x / p.z + k.cx, k.fy * p.y / p.z + k.cy};
}

Trajectory reconstruct_trajectory(const Trajectory& t2d, const CameraIntrinsics& k,
                                  const GapPolicy& policy, ReconstructionStats* stats) {
  validate_intrinsics(k);
  if (t2d.dim != Dim::k2D) {
    throw Error(ErrorCode::kDimensionMismatch, "reconstruction expects a 2d trajectory");
  }
  const std::size_t n = t2d.frames.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = t2d.frames[i];
    if (!f.depth || f.depth->size() != kLandmarkCount || f.points.size() != kLandmarkCount) {
      throw Error(ErrorCode::kMissingDepth,
                  "frame " + std::to_string(i) + " of " + t2d.subject_id + " has no depth");
    }
  }

  Trajectory out = t2d;
  out.dim = Dim::k3D;
  out.resolution.reset();

  std::vector<std::vector<bool>> ok(n, std::vector<bool>(kLandmarkCount, false));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& src = t2d.frames[i];
    auto& dst = out.frames[i];
    dst.depth.reset();
    for (std::size_t j = 0; j < kLandmarkCount; ++j) {
      const double z = (*src.depth)[j];
      if (z > 0.0 && src.is_valid(j)) {
        dst.points[j] = back_project(src.points[j].x, src.points[j].y, z, k);
        ok[i][j] = true;
      } else {
        dst.points[j] = {};
      }
    }
  }

  // Fill interior gaps of at most max_gap frames per landmark.
  std::size_t interpolated = 0;
  for (std::size_t j = 0; j < kLandmarkCount; ++j) {
    std::size_t i = 0;
    while (i < n) {
      if (ok[i][j]) {
        ++i;
        continue;
      }
      std::size_t gap_end = i;
      while (gap_end < n && !ok[gap_end][j]) ++gap_end;
      const std::size_t len = gap_end - i;
      if (i > 0 && gap_end < n && len <= static_cast<std::size_t>(std::max(policy.max_gap, 0))) {
        const auto& a = out.frames[i - 1];
        const auto& b = out.frames[gap_end];
        const double span = b.timestamp - a.timestamp;
        for (std::size_t m = i; m < gap_end; ++m) {
          const double w = (out.frames[m].timestamp - a.timestamp) / span;
          out.frames[m].points[j] = (1.0 - w) * a.points[j] + w * b.points[j];
          ok[m][j] = true;
          ++interpolated;
        }
      }
      i = gap_end;
    }
  }

  std::size_t invalid_frames = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool all = true;
    for (bool b : ok[i]) all = all && b;
    if (all) {
      out.frames[i].valid.reset();
    } else {
      out.frames[i].valid = ok[i];
      ++invalid_frames;
    }
  }

  if (stats) *stats = {n, interpolated, invalid_frames};
  if (n > 0 && static_cast<double>(invalid_frames) > policy.max_invalid_fraction * n) {
    std::ostringstream msg;
    msg << "reconstruction failed for " << t2d.subject_id << " " << to_string(t2d.task) << ": "
        << invalid_frames << " of " << n << " frames lack usable depth (limit "
        << policy.max_invalid_fraction * 100.0 << "%)";
    throw Error(ErrorCode::kReconstructionFailure, msg.str());
  }
  return out;
}

}  // namespace orofacial::recon
