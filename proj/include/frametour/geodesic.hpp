#pragma once

#include <vector>

#include "frametour/types.hpp"

namespace frametour {

/// Alignment data for plane-to-plane motion between two frames.
struct GeodesicInfo {
  Frame start;
  Eigen::MatrixXd aligned_start;   ///< Ga = Fa Va, principal vectors of the start plane
  Eigen::MatrixXd aligned_target;  ///< Gz = Fz Vz
  Eigen::MatrixXd ortho;           ///< per-pair out-of-plane direction (zero column if frozen)
  Eigen::VectorXd angles;          ///< principal angles tau, non-decreasing
  Eigen::MatrixXd align_rot;       ///< Va; undoes the start alignment so the path begins at Fa
  double total_angle = 0.0;        ///< Euclidean norm of the principal angles
};

/// Shortest plane-to-plane path. The final frame spans the target plane but
/// is in general a within-plane rotation of the target frame.
struct GeodesicPath {
  std::vector<Frame> frames;
  Eigen::VectorXd principal_angles;
  Frame aligned_start;
  Frame aligned_target;
  double total_angle = 0.0;
  double step_angle = 0.0;
};

/// Principal-vector alignment of the pair: SVD of Fa^T Fz, refined angles
/// from atan2 of the (sin, cos) parts so that tiny angles stay accurate.
GeodesicInfo geodesic_info(const Frame& fa, const Frame& fz, const Tolerances& tols = {});

/// Frame at the given fraction: each aligned start direction rotated by
/// fraction * tau_i towards its target counterpart, then rotated back by Va^T
/// so the motion starts at Fa itself.
Frame geodesic_frame_at(const GeodesicInfo& info, double fraction, const Tolerances& tols = {});

/// Full path of nsteps+1 frames. frames[0] == fa exactly; the endpoint plane
/// equals the target plane within arrival_tol, with no constraint on the
/// endpoint frame. Rotation happens only through the principal angles (no
/// within-plane spin).
GeodesicPath geodesic_full_path(const Frame& fa, const Frame& fz, int nsteps,
                                const Tolerances& tols = {});

}  // namespace frametour
