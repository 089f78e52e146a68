#pragma once

#include <Eigen/Dense>

#include "frametour/linalg.hpp"
#include "frametour/rng.hpp"
#include "frametour/tour.hpp"
#include "frametour/types.hpp"

namespace testutil {

inline Eigen::MatrixXd random_matrix(int rows, int cols, frametour::Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.normal();
  }
  return m;
}

inline frametour::Frame random_frame(int p, int d, frametour::Rng& rng) {
  return frametour::random_frame(p, d, rng);
}

// In-plane rotation of a 2-frame by angle radians.
inline frametour::Frame spin(const frametour::Frame& f, double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return frametour::Frame(f.basis() * r);
}

// Independent projector oracle: column-space projector through the normal
// equations, no orthonormal basis involved.
inline Eigen::MatrixXd span_projector(const Eigen::MatrixXd& m) {
  return m * (m.transpose() * m).inverse() * m.transpose();
}

// Explicit q x q Givens rotation matrix (the brute-force route: tests multiply
// full matrices instead of using row_rot).
inline Eigen::MatrixXd rotation_matrix(int q, int i, int j, double theta) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(q, q);
  g(i, i) = std::cos(theta);
  g(j, j) = std::cos(theta);
  g(i, j) = -std::sin(theta);
  g(j, i) = std::sin(theta);
  return g;
}

}  // namespace testutil
