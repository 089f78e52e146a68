#pragma once

#include <Eigen/Dense>

#include "frametour/types.hpp"

namespace frametour {

/// max_ij |a_ij - b_ij|; throws invalid_input on shape mismatch.
double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// True iff the columns of m are unit length and pairwise orthogonal:
/// ||m^T m - I||_max <= tol.
bool is_orthonormal(const Eigen::MatrixXd& m, double tol);
bool is_orthonormal(const Frame& f, double tol);

/// Modified Gram-Schmidt over columns with a single re-orthogonalization pass
/// for badly conditioned columns. The first column keeps its direction; the
/// result spans the same column space as the input. Throws degenerate_input
/// when a column is (numerically) dependent on earlier ones.
Frame orthonormalize(const Eigen::MatrixXd& m, const Tolerances& tols = {});

/// Orthonormal basis for the directions of fz that are orthogonal to fa.
/// Throws shared_subspace when the planes overlap and a full set of d
/// complement directions does not exist.
Frame orthogonal_complement(const Frame& fz, const Frame& fa, const Tolerances& tols = {});

struct Svd {
  Eigen::MatrixXd u;
  Eigen::VectorXd singular_values;  ///< non-negative, non-increasing
  Eigen::MatrixXd v;
};

/// Full SVD, m = u * diag(singular_values) * v^T. Intended for the tiny
/// (at most 4 x 4) matrices this library works with.
Svd svd_small(const Eigen::MatrixXd& m);

/// Canonical angles between span(fa) and span(fz): arccos of the clamped
/// singular values of fa^T fz, sorted non-decreasing, each in [0, pi/2].
/// Zero vector iff the frames span the same plane.
Eigen::VectorXd principal_angles(const Frame& fa, const Frame& fz);

/// ||Fa Fa^T - Fz Fz^T||_max; zero iff the frames span the same plane.
double plane_distance(const Frame& fa, const Frame& fz);

namespace detail {

/// Orthonormalized residual of the columns of `extra` after projecting out
/// `basis` (assumed orthonormal) and previously kept residuals. Columns whose
/// residual norm falls below drop_tol are dropped; the result has between 0
/// and extra.cols() columns.
Eigen::MatrixXd residual_columns(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& extra,
                                 double drop_tol);

}  // namespace detail

}  // namespace frametour
