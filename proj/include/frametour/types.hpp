#pragma once

#include <Eigen/Dense>

namespace frametour {

/// Numerical tolerances shared across the library. Defaults are suitable for
/// double precision; every operation takes these instead of hard-coding.
struct Tolerances {
  double orth_tol = 1e-9;     ///< orthonormality slack for frames and bases
  double arrival_tol = 1e-8;  ///< endpoint error allowed for interpolation paths
  double angle_tol = 1e-6;    ///< slack for angle comparisons
};

/// Throws invalid_input unless all tolerances are strictly positive.
void validate(const Tolerances& tols);

/// A p x d projection basis with orthonormal columns (column k is the k-th
/// projection direction). Construction validates shape, finiteness and
/// orthonormality; this library supports d in {1, 2}.
class Frame {
 public:
  explicit Frame(Eigen::MatrixXd basis, const Tolerances& tols = {});

  const Eigen::MatrixXd& basis() const { return basis_; }
  int p() const { return static_cast<int>(basis_.rows()); }
  int d() const { return static_cast<int>(basis_.cols()); }

 private:
  Eigen::MatrixXd basis_;
};

}  // namespace frametour
