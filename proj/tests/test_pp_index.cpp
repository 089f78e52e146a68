#include <doctest.h>

#include <cmath>

#include "frametour/data_io.hpp"
#include "frametour/errors.hpp"
#include "frametour/pp_index.hpp"
#include "frametour/rng.hpp"
#include "test_util.hpp"

using namespace frametour;

namespace {

Eigen::MatrixXd rotate_points(const Eigen::MatrixXd& points, double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return points * r.transpose();
}

// standardized columns of the bundled sine data
Eigen::MatrixXd sine_points(int n, double noise_sd, std::uint64_t seed) {
  return standardize(generate_sine(n, noise_sd, seed)).values;
}

}  // namespace

TEST_CASE("fit_cubic_spline: splines nest linear functions") {
  Rng rng(41);
  const int n = 100;
  Eigen::VectorXd x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = rng.uniform(-3.0, 3.0);
    y(i) = 2.5 * x(i) - 1.0;
  }
  const Eigen::VectorXd fitted = fit_cubic_spline(x, y);
  CHECK((y - fitted).cwiseAbs().maxCoeff() < 1e-3);

  Eigen::MatrixXd p(n, 2);
  p.col(0) = x;
  p.col(1) = y;
  CHECK(splines_index(p) > 0.999);
}

TEST_CASE("fit_cubic_spline: independent response fits the mean") {
  Rng rng(42);
  const int n = 400;
  Eigen::VectorXd x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = rng.uniform(0.0, 1.0);
    y(i) = rng.normal();
  }
  const Eigen::VectorXd fitted = fit_cubic_spline(x, y);
  // fitted values hover near the sample mean
  CHECK((fitted.array() - y.mean()).abs().maxCoeff() < 1.0);

  Eigen::MatrixXd p(n, 2);
  p.col(0) = x;
  p.col(1) = y;
  CHECK(splines_index(p) < 0.2);
}

TEST_CASE("fit_cubic_spline: noiseless sine over two periods") {
  const int n = 200;
  Eigen::VectorXd x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = -2.0 * M_PI + 4.0 * M_PI * i / (n - 1);
    y(i) = std::sin(x(i));
  }
  const Eigen::VectorXd fitted = fit_cubic_spline(x, y);
  const double var_y = (y.array() - y.mean()).square().sum();
  const double var_r = (y - fitted).squaredNorm();
  CHECK(1.0 - var_r / var_y >= 0.99);
}

TEST_CASE("fit_cubic_spline: guards") {
  Eigen::VectorXd tiny = Eigen::VectorXd::LinSpaced(5, 0, 1);
  CHECK_THROWS_AS(fit_cubic_spline(tiny, tiny), invalid_input);

  Eigen::VectorXd x = Eigen::VectorXd::Constant(20, 3.0);
  Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(20, 0, 1);
  CHECK_THROWS_AS(fit_cubic_spline(x, y), degenerate_input);

  // a ridge fit can never lose to the best constant fit
  Rng rng(43);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 50;
    Eigen::VectorXd xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs(i) = rng.uniform(-1.0, 1.0);
      ys(i) = rng.normal() * 10.0 + 100.0;
    }
    const Eigen::VectorXd fitted = fit_cubic_spline(xs, ys);
    const double const_rss = (ys.array() - ys.mean()).square().sum();
    CHECK((ys - fitted).squaredNorm() <= const_rss * (1.0 + 1e-12));
  }
}

TEST_CASE("splines_index: sine data drops under in-plane rotation") {
  const Eigen::MatrixXd pts = sine_points(300, 0.05, 2024);
  const double at0 = splines_index(pts);
  const double at45 = splines_index(rotate_points(pts, M_PI / 4));
  const double at60 = splines_index(rotate_points(pts, M_PI / 3));
  CHECK(at0 >= 0.95);
  CHECK(at0 > at45);
  CHECK(at45 > at60);
  CHECK(at0 - at60 > 0.5);  // rotation sensitivity is large, not marginal
}

TEST_CASE("splines_index: pure noise scores low") {
  Rng rng(44);
  Eigen::MatrixXd p = testutil::random_matrix(500, 2, rng);
  CHECK(splines_index(p) < 0.2);
}

TEST_CASE("splines_index: zero response variance scores zero") {
  Eigen::MatrixXd p(20, 2);
  p.col(0) = Eigen::VectorXd::LinSpaced(20, 0, 1);
  p.col(1) = Eigen::VectorXd::Constant(20, 5.0);
  CHECK(splines_index(p) == 0.0);
}

TEST_CASE("splines_index: invariant under x-rescaling and y-translation") {
  const Eigen::MatrixXd pts = sine_points(200, 0.05, 7);
  const double base = splines_index(pts);
  Eigen::MatrixXd scaled = pts;
  scaled.col(0) = pts.col(0) * 37.5;
  scaled.col(0).array() += 4.0;
  scaled.col(1).array() += 11.0;
  CHECK(std::abs(splines_index(scaled) - base) <= 1e-8);
}

TEST_CASE("splines_index: deterministic and within [0, 1]") {
  Rng rng(45);
  for (int rep = 0; rep < 5; ++rep) {
    const Eigen::MatrixXd p = testutil::random_matrix(60, 2, rng);
    const double a = splines_index(p);
    const double b = splines_index(p);
    CHECK(a == b);  // bit-identical
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
}

TEST_CASE("splines_index_symmetric: catches structure in either orientation") {
  // x is a function of y, so the oriented index misses it
  Rng rng(46);
  const int n = 300;
  Eigen::MatrixXd p(n, 2);
  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(-2.0 * M_PI, 2.0 * M_PI);
    p(i, 1) = t;
    p(i, 0) = std::sin(t) + 0.05 * rng.normal();
  }
  const double oriented = splines_index(p);
  const double sym = splines_index_symmetric(p);
  CHECK(sym >= oriented);
  CHECK(sym > 0.9);
}

TEST_CASE("holes_index: ring beats blob and ignores rotation") {
  Rng rng(47);
  const int n = 400;
  Eigen::MatrixXd ring(n, 2), blob(n, 2);
  for (int i = 0; i < n; ++i) {
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    const double radius = 2.0 + 0.05 * rng.normal();
    ring(i, 0) = radius * std::cos(angle);
    ring(i, 1) = radius * std::sin(angle);
    blob(i, 0) = rng.normal();
    blob(i, 1) = rng.normal();
  }
  CHECK(holes_index(ring) > holes_index(blob));

  const double base = holes_index(ring);
  for (int rep = 0; rep < 5; ++rep) {
    const double value = holes_index(rotate_points(ring, rng.uniform(0.0, 2.0 * M_PI)));
    CHECK(std::abs(value - base) <= 1e-10);
  }
}

TEST_CASE("holes_index: degenerate single repeated point is finite") {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(50, 2, 1.5);
  const double value = holes_index(p);
  CHECK(std::isfinite(value));
  CHECK(value >= 0.0);
  CHECK(value <= 1.0);
}

TEST_CASE("make_index: names, flags and errors") {
  CHECK(make_index("splines2d").rotation_invariant == false);
  CHECK(make_index("splines2d_sym").rotation_invariant == false);
  CHECK(make_index("holes").rotation_invariant == true);
  CHECK_THROWS_AS(make_index("nope"), invalid_input);

  Rng rng(48);
  const Eigen::MatrixXd p = testutil::random_matrix(50, 2, rng);
  CHECK(make_index("splines2d").evaluate(p) == splines_index(p));
  CHECK(make_index("holes").evaluate(p) == holes_index(p));
}

TEST_CASE("splines_index: shape guards") {
  Rng rng(49);
  CHECK_THROWS_AS(splines_index(testutil::random_matrix(5, 2, rng)), invalid_input);
  CHECK_THROWS_AS(splines_index(testutil::random_matrix(50, 1, rng)), invalid_input);
  CHECK_THROWS_AS(holes_index(testutil::random_matrix(10, 3, rng)), invalid_input);
}
