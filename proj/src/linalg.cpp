#include "frametour/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "frametour/errors.hpp"

namespace frametour {
namespace {

// Residual norm below which a column counts as dependent on the span so far.
constexpr double kRankTol = 1e-12;

// One Gram-Schmidt sweep of v against the first ncols columns of q.
void project_out(const Eigen::MatrixXd& q, Eigen::Index ncols, Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < ncols; ++i) {
    v -= q.col(i).dot(v) * q.col(i);
  }
}

}  // namespace

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw invalid_input("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_orthonormal(const Eigen::MatrixXd& m, double tol) {
  if (!(tol > 0.0)) throw invalid_input("is_orthonormal: tolerance must be positive");
  if (!m.allFinite()) throw invalid_input("is_orthonormal: entries must be finite");
  if (m.cols() == 0) return true;
  Eigen::MatrixXd gram = m.transpose() * m;
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff() <= tol;
}

bool is_orthonormal(const Frame& f, double tol) { return is_orthonormal(f.basis(), tol); }

Frame orthonormalize(const Eigen::MatrixXd& m, const Tolerances& tols) {
  validate(tols);
  if (m.cols() < 1 || m.rows() < m.cols()) {
    throw invalid_input("orthonormalize: expected a p x d matrix with p >= d >= 1");
  }
  if (!m.allFinite()) throw invalid_input("orthonormalize: entries must be finite");

  Eigen::MatrixXd q(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::VectorXd v = m.col(j);
    const double scale = v.norm();
    if (scale < kRankTol) {
      throw degenerate_input("orthonormalize: column " + std::to_string(j) +
                             " is numerically zero");
    }
    project_out(q, j, v);
    if (v.norm() < 1e-6 * scale) {
      project_out(q, j, v);  // re-orthogonalize once when heavily cancelled
    }
    const double nrm = v.norm();
    if (nrm < kRankTol) {
      throw degenerate_input("orthonormalize: column " + std::to_string(j) +
                             " lies in the span of earlier columns");
    }
    q.col(j) = v / nrm;
  }
  return Frame(std::move(q), tols);
}

Frame orthogonal_complement(const Frame& fz, const Frame& fa, const Tolerances& tols) {
  validate(tols);
  if (fa.p() != fz.p() || fa.d() != fz.d()) {
    throw invalid_input("orthogonal_complement: frames must share p and d");
  }
  Eigen::MatrixXd res = detail::residual_columns(fa.basis(), fz.basis(), kRankTol);
  if (res.cols() != fz.d()) {
    throw shared_subspace(
        "orthogonal_complement: target plane overlaps the start plane; no full-rank complement "
        "exists");
  }
  return Frame(std::move(res), tols);
}

Svd svd_small(const Eigen::MatrixXd& m) {
  if (m.size() == 0) throw invalid_input("svd_small: empty matrix");
  if (!m.allFinite()) throw invalid_input("svd_small: entries must be finite");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw numerical_failure("svd_small: did not converge");
  return Svd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Eigen::VectorXd principal_angles(const Frame& fa, const Frame& fz) {
  if (fa.p() != fz.p() || fa.d() != fz.d()) {
    throw invalid_input("principal_angles: frames must share p and d");
  }
  const Eigen::VectorXd sv = svd_small(fa.basis().transpose() * fz.basis()).singular_values;
  Eigen::VectorXd angles(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    // singular values are cosines; clamp to absorb roundoff before arccos
    angles(i) = std::acos(std::clamp(sv(i), -1.0, 1.0));
  }
  // sv non-increasing => angles already non-decreasing
  return angles;
}

double plane_distance(const Frame& fa, const Frame& fz) {
  if (fa.p() != fz.p()) throw invalid_input("plane_distance: frames must share p");
  const Eigen::MatrixXd pa = fa.basis() * fa.basis().transpose();
  const Eigen::MatrixXd pz = fz.basis() * fz.basis().transpose();
  return (pa - pz).cwiseAbs().maxCoeff();
}

namespace detail {

Eigen::MatrixXd residual_columns(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& extra,
                                 double drop_tol) {
  Eigen::MatrixXd kept(basis.rows(), extra.cols());
  Eigen::Index nkept = 0;
  for (Eigen::Index j = 0; j < extra.cols(); ++j) {
    Eigen::VectorXd v = extra.col(j);
    const double scale = std::max(v.norm(), 1.0);
    project_out(basis, basis.cols(), v);
    project_out(kept, nkept, v);
    if (v.norm() < 1e-6 * scale) {
      project_out(basis, basis.cols(), v);
      project_out(kept, nkept, v);
    }
    const double nrm = v.norm();
    if (nrm < drop_tol) continue;
    kept.col(nkept++) = v / nrm;
  }
  return kept.leftCols(nkept);
}

}  // namespace detail

}  // namespace frametour
