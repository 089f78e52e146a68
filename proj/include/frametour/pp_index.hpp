#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace frametour {

/// A projection-pursuit index: scores an n x d matrix of projected
/// observations in [0, 1], higher meaning more interesting. Evaluations must
/// be pure so the tour engine may call them concurrently.
struct IndexFunction {
  std::string name;
  bool rotation_invariant = false;
  std::function<double(const Eigen::MatrixXd&)> evaluate;
};

/// Penalized least-squares cubic B-spline fit of y on x: 10 interior knots at
/// x-quantiles, ridge 1e-4 on the basis coefficients, unpenalized intercept.
/// Returns the fitted values. Requires n >= 10 and at least 4 distinct x.
Eigen::VectorXd fit_cubic_spline(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Oriented splines index on a 2-d projection: 1 - Var(residual)/Var(y) for a
/// cubic spline fit of column 1 (response) on column 0 (predictor), clamped
/// to [0, 1]. Zero response variance scores 0. Deliberately NOT rotation
/// invariant: in-plane rotations change which functional dependence the fixed
/// predictor/response orientation can see.
double splines_index(const Eigen::MatrixXd& projected);

/// Orientation-free variant: the larger of the two oriented fits (y on x, x
/// on y).
double splines_index_symmetric(const Eigen::MatrixXd& projected);

/// Holes index: (1 - mean exp(-|z|^2/2)) / (1 - exp(-d/2)), clamped to [0, 1].
/// Depends on the point radii only, hence rotation invariant. Callers are
/// expected to center/scale the data.
double holes_index(const Eigen::MatrixXd& projected);

/// Lookup by name: "splines2d", "splines2d_sym" or "holes".
IndexFunction make_index(const std::string& name);

}  // namespace frametour
