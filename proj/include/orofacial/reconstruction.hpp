#pragma once

#include "orofacial/model.hpp"

namespace orofacial::recon {

/// World coordinates in meters, camera frame (z along the optical axis).
using WorldPoint = Vec3;

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Pinhole back-projection of pixel (u, v) at depth z. Lens distortion is
/// not modelled; the streams are assumed rectified and registered.
/// Throws Error(kInvalidDepth) when z <= 0 or is not finite.
WorldPoint back_project(double u, double v, double z, const CameraIntrinsics& k);

/// Inverse of back_project. Throws Error(kInvalidDepth) when p.z <= 0.
PixelPoint project(const WorldPoint& p, const CameraIntrinsics& k);

/// How missing depth (z = 0) is handled during reconstruction.
struct GapPolicy {
  /// Longest run of consecutive missing frames, per landmark, that is filled
  /// by linear interpolation in time between the bounding valid frames.
  int max_gap = 5;
  /// Largest tolerated fraction of frames with any unfilled landmark.
  double max_invalid_fraction = 0.2;
};

struct ReconstructionStats {
  std::size_t frames = 0;
  std::size_t interpolated_points = 0;
  std::size_t invalid_frames = 0;
};

/// Turns a 2d trajectory carrying per-landmark depth into a 3d trajectory.
///
/// Landmarks whose depth gap cannot be filled are flagged invalid in the
/// output frame; timestamps and metadata are preserved. Throws
/// Error(kMissingDepth) when a frame lacks depth, and
/// Error(kReconstructionFailure) when the invalid-frame fraction exceeds the
/// policy limit.
Trajectory reconstruct_trajectory(const Trajectory& t2d, const CameraIntrinsics& k,
                                  const GapPolicy& policy = {},
                                  ReconstructionStats* stats = nullptr);

}  // namespace orofacial::recon
