#pragma once

#include <vector>

#include "frametour/types.hpp"

namespace frametour {

/// Joint-subspace basis for a start/target pair of frames. The first d
/// columns are the start frame unchanged; the remaining columns span the part
/// of the target outside the start plane, plus at most one padding direction
/// when the target is a reflection of the start plane (which no rotation
/// inside the shared plane can reach).
struct PreprojectionBasis {
  Eigen::MatrixXd b;  ///< p x q with orthonormal columns, d <= q <= 2d
  int d = 0;          ///< projection dimension of the frames it was built from

  int p() const { return static_cast<int>(b.rows()); }
  int q() const { return static_cast<int>(b.cols()); }
};

/// A frame expressed in preprojection coordinates: W = B^T F, q x d with
/// orthonormal columns.
struct PreFrame {
  Eigen::MatrixXd w;
};

/// One Givens rotation acting on rows i < j (0-based) by angle theta.
struct GivensRotation {
  int i = 0;
  int j = 0;
  double theta = 0.0;
};

/// Ordered rotations that map a preprojected target Wz onto the canonical
/// preframe E_d, one zeroed coordinate per rotation. Angles follow the atan2
/// convention: the zeroing step rotates the pair (w_i, w_j) onto
/// (sqrt(w_i^2 + w_j^2), 0), i.e. applies row_rot with -theta.
struct GivensSequence {
  int rows = 0;  ///< preframe row count q
  int cols = 0;  ///< preframe column count d
  std::vector<GivensRotation> rotations;

  /// Euclidean norm of the angle vector; the scalar path length.
  double total_angle() const;
};

/// Everything needed to interpolate between one pair of frames.
struct GivensInfo {
  PreprojectionBasis basis;
  PreFrame wa;  ///< canonical E_d
  PreFrame wz;  ///< target in preprojection coordinates
  GivensSequence sequence;
};

/// A realized frame-to-frame path. frames.front() is the start frame exactly
/// and frames.back() matches the target within arrival_tol.
struct InterpolationPath {
  std::vector<Frame> frames;
  double total_angle = 0.0;
  double step_angle = 0.0;
  GivensSequence sequence;
  Eigen::MatrixXd basis;  ///< preprojection basis the path was built in
};

/// Rotate rows i and j of m by theta: row_i' = cos(theta) row_i - sin(theta) row_j,
/// row_j' = sin(theta) row_i + cos(theta) row_j. All other rows are copied
/// bit-identically. 0 <= i < j < rows.
Eigen::MatrixXd row_rot(const Eigen::MatrixXd& m, int i, int j, double theta);

/// B = (Fa, F*): start frame columns followed by the orthonormal complement
/// of the target. Requires the two planes to be fully disjoint (q = 2d);
/// propagates shared_subspace otherwise. givens_info() below is the tolerant
/// variant used by path construction.
PreprojectionBasis preprojection(const Frame& fa, const Frame& fz, const Tolerances& tols = {});

/// W = B^T F. Throws subspace_violation unless F lies in span(B) within
/// orth_tol. construct_preframe(Fa, B) is E_d by construction.
PreFrame construct_preframe(const Frame& f, const PreprojectionBasis& basis,
                            const Tolerances& tols = {});

/// Sequence of Givens rotations mapping wz onto wa = E_d, zeroing one
/// coordinate at a time: column 0 against rows 1..q-1, then column 1 against
/// rows 2..q-1, and so on. Near-null pairs (norm < 1e-12) get angle zero.
GivensSequence calculate_angles(const PreFrame& wa, const PreFrame& wz,
                                const Tolerances& tols = {});

/// Preframe at the given fraction of the motion: the reversed rotation
/// sequence applied to E_d with every angle scaled by `fraction`. Fraction 0
/// yields E_d bit-exactly; fraction 1 reproduces Wz within arrival_tol.
PreFrame interpolate_preframe(const GivensSequence& seq, double fraction);

/// F = B W, mapped back to data coordinates.
Frame construct_moving_frame(const PreFrame& w, const PreprojectionBasis& basis,
                             const Tolerances& tols = {});

/// Builds the preprojection basis, preframes, and rotation sequence for a
/// start/target pair. Unlike preprojection(), overlapping planes are handled
/// by shrinking the basis to d + rank(residual) columns, and reflected
/// targets by padding it with one extra direction, so every reachable pair
/// gets a valid sequence. Throws degenerate_input only when no rotation path
/// exists at all (orientation-reversing target with q = p).
GivensInfo givens_info(const Frame& fa, const Frame& fz, const Tolerances& tols = {});

/// Frame at the given fraction along the motion described by info.
Frame givens_frame_at(const GivensInfo& info, double fraction, const Tolerances& tols = {});

/// Full path of nsteps+1 frames from fa to fz, moving by equal preframe angle
/// per step. frames[0] == fa exactly; the endpoint reaches fz (the frame, not
/// just its plane) within arrival_tol. If fa and fz are bit-identical the
/// path degenerates to the single start frame.
InterpolationPath givens_full_path(const Frame& fa, const Frame& fz, int nsteps,
                                   const Tolerances& tols = {});

/// ceil(total_angle / delta), at least 1: the step count that keeps the
/// angular speed at most delta radians per step.
int steps_for_speed(const GivensSequence& seq, double delta);

}  // namespace frametour
