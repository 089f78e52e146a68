#include "frametour/pp_index.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <vector>

#include "frametour/errors.hpp"

namespace frametour {
namespace {

constexpr int kSplineOrder = 4;       // cubic
constexpr int kInteriorKnots = 10;    // at predictor quantiles
constexpr double kRidge = 1e-4;       // penalty on basis coefficients
constexpr int kMinPoints = 10;

// Type-7 quantile of a sorted vector.
double quantile_sorted(const std::vector<double>& z, double prob) {
  const double h = static_cast<double>(z.size() - 1) * prob;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= z.size()) return z.back();
  return z[lo] + (h - lo) * (z[lo + 1] - z[lo]);
}

// De Boor evaluation of the kSplineOrder non-zero B-spline basis functions at
// x. Returns the index of the first non-zero basis function.
int bspline_basis(const std::vector<double>& knots, int n_basis, double x, double vals[kSplineOrder]) {
  const int k = kSplineOrder;
  const double lo = knots[k - 1];
  const double hi = knots[n_basis];
  if (x < lo) x = lo;
  if (x > hi) x = hi;
  int span = static_cast<int>(std::upper_bound(knots.begin() + (k - 1), knots.begin() + n_basis, x) -
                              knots.begin()) -
             1;
  span = std::clamp(span, k - 1, n_basis - 1);

  vals[0] = 1.0;
  double left[kSplineOrder];
  double right[kSplineOrder];
  for (int r = 1; r < k; ++r) {
    left[r] = x - knots[span + 1 - r];
    right[r] = knots[span + r] - x;
    double saved = 0.0;
    for (int i = 0; i < r; ++i) {
      const double den = right[i + 1] + left[r - i];
      const double tmp = den > 0.0 ? vals[i] / den : 0.0;
      vals[i] = saved + right[i + 1] * tmp;
      saved = left[r - i] * tmp;
    }
    vals[r] = saved;
  }
  return span - k + 1;
}

double sample_variance(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n < 2) return 0.0;
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / static_cast<double>(n - 1);
}

double oriented_splines(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double var_y = sample_variance(y);
  if (var_y <= 0.0) return 0.0;  // nothing to explain
  const Eigen::VectorXd fitted = fit_cubic_spline(x, y);
  const double var_res = sample_variance(y - fitted);
  return std::clamp(1.0 - var_res / var_y, 0.0, 1.0);
}

void check_projection(const Eigen::MatrixXd& projected, int needed_d) {
  if (projected.cols() != needed_d) {
    throw invalid_input("splines index requires a 2-d projection");
  }
  if (projected.rows() < kMinPoints) {
    throw invalid_input("splines index requires at least 10 observations");
  }
  if (!projected.allFinite()) throw invalid_input("projected data must be finite");
}

}  // namespace

Eigen::VectorXd fit_cubic_spline(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index n = x.size();
  if (n != y.size()) throw invalid_input("fit_cubic_spline: x and y sizes differ");
  if (n < kMinPoints) throw invalid_input("fit_cubic_spline: need at least 10 points");
  if (!x.allFinite() || !y.allFinite()) {
    throw invalid_input("fit_cubic_spline: inputs must be finite");
  }

  std::vector<double> sorted(x.data(), x.data() + n);
  std::sort(sorted.begin(), sorted.end());
  int distinct = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] != sorted[i - 1]) ++distinct;
  }
  if (distinct < 4) {
    throw degenerate_input("fit_cubic_spline: predictor needs at least 4 distinct values");
  }
  const double xmin = sorted.front();
  const double xmax = sorted.back();

  // Knot vector: boundary knots repeated order times, interior ones at
  // quantiles (deduplicated, kept strictly inside the range).
  std::vector<double> knots(kSplineOrder, xmin);
  for (int i = 1; i <= kInteriorKnots; ++i) {
    const double t = quantile_sorted(sorted, static_cast<double>(i) / (kInteriorKnots + 1));
    if (t > knots.back() && t < xmax) knots.push_back(t);
  }
  const int n_basis = static_cast<int>(knots.size());  // interior + order
  knots.insert(knots.end(), kSplineOrder, xmax);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n_basis);
  double vals[kSplineOrder];
  for (Eigen::Index r = 0; r < n; ++r) {
    const int first = bspline_basis(knots, n_basis, x(r), vals);
    for (int k = 0; k < kSplineOrder; ++k) a(r, first + k) = vals[k];
  }

  // Ridge-penalized normal equations on centered responses; centering keeps
  // the intercept unpenalized so the fit can never do worse than the mean.
  const double ybar = y.mean();
  const Eigen::VectorXd yc = y.array() - ybar;
  Eigen::MatrixXd gram = a.transpose() * a;
  gram.diagonal().array() += kRidge;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success) {
    throw numerical_failure("fit_cubic_spline: normal equations factorization failed");
  }
  const Eigen::VectorXd coef = ldlt.solve(a.transpose() * yc);
  Eigen::VectorXd fitted = a * coef;
  fitted.array() += ybar;
  if (!fitted.allFinite()) {
    throw numerical_failure("fit_cubic_spline: fit produced non-finite values");
  }
  return fitted;
}

double splines_index(const Eigen::MatrixXd& projected) {
  check_projection(projected, 2);
  return oriented_splines(projected.col(0), projected.col(1));
}

double splines_index_symmetric(const Eigen::MatrixXd& projected) {
  check_projection(projected, 2);
  double best = 0.0;
  for (int orientation = 0; orientation < 2; ++orientation) {
    try {
      best = std::max(best, oriented_splines(projected.col(orientation),
                                             projected.col(1 - orientation)));
    } catch (const degenerate_input&) {
      // constant predictor: this orientation carries no signal
    }
  }
  return best;
}

double holes_index(const Eigen::MatrixXd& projected) {
  const Eigen::Index d = projected.cols();
  if (d < 1 || d > 2) throw invalid_input("holes_index: projection must be 1-d or 2-d");
  if (projected.rows() < 1) throw invalid_input("holes_index: empty projection");
  if (!projected.allFinite()) throw invalid_input("holes_index: projected data must be finite");
  const double mean_kernel = (-0.5 * projected.rowwise().squaredNorm().array()).exp().mean();
  const double denom = 1.0 - std::exp(-0.5 * static_cast<double>(d));
  return std::clamp((1.0 - mean_kernel) / denom, 0.0, 1.0);
}

IndexFunction make_index(const std::string& name) {
  if (name == "splines2d") {
    return IndexFunction{name, false, [](const Eigen::MatrixXd& p) { return splines_index(p); }};
  }
  if (name == "splines2d_sym") {
    return IndexFunction{name, false,
                         [](const Eigen::MatrixXd& p) { return splines_index_symmetric(p); }};
  }
  if (name == "holes") {
    return IndexFunction{name, true, [](const Eigen::MatrixXd& p) { return holes_index(p); }};
  }
  throw invalid_input("unknown index '" + name +
                      "'; available: splines2d, splines2d_sym, holes");
}

}  // namespace frametour
