#include <doctest.h>

#include <cmath>

#include "frametour/errors.hpp"
#include "frametour/linalg.hpp"
#include "frametour/rng.hpp"
#include "test_util.hpp"

using namespace frametour;

TEST_CASE("is_orthonormal: identity columns and duplicated column") {
  Eigen::MatrixXd e2 = Eigen::MatrixXd::Identity(4, 2);
  CHECK(is_orthonormal(e2, 1e-9));

  Eigen::MatrixXd dup(4, 2);
  dup.col(0) = e2.col(0);
  dup.col(1) = e2.col(0);  // off-diagonal Gram entry is 1
  CHECK_FALSE(is_orthonormal(dup, 1e-9));
}

TEST_CASE("is_orthonormal: non-finite entries rejected") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 2);
  m(0, 0) = std::nan("");
  CHECK_THROWS_AS(is_orthonormal(m, 1e-9), invalid_input);
}

TEST_CASE("orthonormalize: scaling removal") {
  Eigen::MatrixXd m(3, 2);
  m << 2, 0, 0, 3, 0, 0;
  const Frame f = orthonormalize(m);
  Eigen::MatrixXd expected(3, 2);
  expected << 1, 0, 0, 1, 0, 0;
  CHECK(max_abs_diff(f.basis(), expected) < 1e-15);
}

TEST_CASE("orthonormalize: already orthonormal input is unchanged") {
  Rng rng(11);
  const Frame f = testutil::random_frame(5, 2, rng);
  const Frame again = orthonormalize(f.basis());
  CHECK(max_abs_diff(f.basis(), again.basis()) < 1e-12);
}

TEST_CASE("orthonormalize: random inputs are orthonormal and span-preserving") {
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int p = 3 + static_cast<int>(rng.next_u64() % 6);
    const int d = 1 + static_cast<int>(rng.next_u64() % 2);
    const Eigen::MatrixXd m = testutil::random_matrix(p, d, rng);
    const Frame f = orthonormalize(m);
    CHECK(is_orthonormal(f, 1e-9));
    // span check against the normal-equation projector oracle
    const Eigen::MatrixXd pf = f.basis() * f.basis().transpose();
    CHECK((pf - testutil::span_projector(m)).cwiseAbs().maxCoeff() < 1e-10);
    // first column keeps its direction
    CHECK((f.basis().col(0) - m.col(0) / m.col(0).norm()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("orthonormalize: idempotent") {
  Rng rng(7);
  const Eigen::MatrixXd m = testutil::random_matrix(6, 2, rng);
  const Frame once = orthonormalize(m);
  const Frame twice = orthonormalize(once.basis());
  CHECK(max_abs_diff(once.basis(), twice.basis()) < 1e-12);
}

TEST_CASE("orthonormalize: rank-deficient input throws") {
  Eigen::MatrixXd m(4, 2);
  m.col(0) = Eigen::Vector4d(1, 2, 3, 4);
  m.col(1) = 2.0 * m.col(0);
  CHECK_THROWS_AS(orthonormalize(m), degenerate_input);
}

TEST_CASE("orthogonal_complement: already orthogonal planes") {
  Eigen::MatrixXd fa = Eigen::MatrixXd::Zero(6, 2);
  fa(0, 0) = 1;
  fa(1, 1) = 1;
  Eigen::MatrixXd fz = Eigen::MatrixXd::Zero(6, 2);
  fz(2, 0) = 1;
  fz(3, 1) = 1;
  const Frame fstar = orthogonal_complement(Frame(fz), Frame(fa));
  CHECK(max_abs_diff(fstar.basis(), fz) < 1e-15);
}

TEST_CASE("orthogonal_complement: hand Gram-Schmidt case") {
  Eigen::MatrixXd fa = Eigen::MatrixXd::Zero(3, 1);
  fa(0, 0) = 1;
  Eigen::MatrixXd fz = Eigen::MatrixXd::Zero(3, 1);
  fz(0, 0) = fz(1, 0) = 1.0 / std::sqrt(2.0);
  const Frame fstar = orthogonal_complement(Frame(fz), Frame(fa));
  Eigen::MatrixXd e2 = Eigen::MatrixXd::Zero(3, 1);
  e2(1, 0) = 1;
  CHECK(max_abs_diff(fstar.basis(), e2) < 1e-12);
}

TEST_CASE("orthogonal_complement: shared subspace throws") {
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(3, 1);
  e1(0, 0) = 1;
  CHECK_THROWS_AS(orthogonal_complement(Frame(e1), Frame(e1)), shared_subspace);
}

TEST_CASE("orthogonal_complement postconditions on random pairs") {
  Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const Frame fa = testutil::random_frame(6, 2, rng);
    const Frame fz = testutil::random_frame(6, 2, rng);
    const Frame fstar = orthogonal_complement(fz, fa);
    CHECK((fstar.basis().transpose() * fa.basis()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(is_orthonormal(fstar, 1e-9));
  }
}

TEST_CASE("svd_small: identity and diagonal") {
  const Svd id = svd_small(Eigen::MatrixXd::Identity(2, 2));
  CHECK(id.singular_values(0) == doctest::Approx(1.0));
  CHECK(id.singular_values(1) == doctest::Approx(1.0));

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 3;
  diag(1, 1) = 2;
  const Svd sd = svd_small(diag);
  CHECK(sd.singular_values(0) == doctest::Approx(3.0));
  CHECK(sd.singular_values(1) == doctest::Approx(2.0));
}

TEST_CASE("svd_small: reconstruction of random 4x2 matrices") {
  Rng rng(5);
  for (int rep = 0; rep < 25; ++rep) {
    const Eigen::MatrixXd m = testutil::random_matrix(4, 2, rng);
    const Svd svd = svd_small(m);
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(4, 2);
    sigma(0, 0) = svd.singular_values(0);
    sigma(1, 1) = svd.singular_values(1);
    const Eigen::MatrixXd back = svd.u * sigma * svd.v.transpose();
    CHECK(max_abs_diff(back, m) <= 1e-10 * m.norm());
    CHECK(is_orthonormal(svd.u, 1e-10));
    CHECK(is_orthonormal(svd.v, 1e-10));
    CHECK(svd.singular_values(0) >= svd.singular_values(1));
    CHECK(svd.singular_values(1) >= 0.0);
  }
}

TEST_CASE("principal_angles: identical, orthogonal, sign-flipped") {
  Rng rng(3);
  const Frame fa = testutil::random_frame(6, 2, rng);
  const Eigen::VectorXd zero = principal_angles(fa, fa);
  CHECK(zero.cwiseAbs().maxCoeff() < 1e-6);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 2);
  a(0, 0) = a(1, 1) = 1;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(6, 2);
  b(2, 0) = b(3, 1) = 1;
  const Eigen::VectorXd right = principal_angles(Frame(a), Frame(b));
  CHECK(right(0) == doctest::Approx(M_PI / 2));
  CHECK(right(1) == doctest::Approx(M_PI / 2));

  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(3, 1);
  e1(0, 0) = 1;
  const Eigen::VectorXd flip = principal_angles(Frame(e1), Frame(-e1));
  CHECK(flip(0) < 1e-6);  // same plane despite the sign flip
}

TEST_CASE("principal_angles: symmetric and invariant under in-plane rotation") {
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const Frame fa = testutil::random_frame(5, 2, rng);
    const Frame fz = testutil::random_frame(5, 2, rng);
    const Eigen::VectorXd ab = principal_angles(fa, fz);
    const Eigen::VectorXd ba = principal_angles(fz, fa);
    CHECK((ab - ba).cwiseAbs().maxCoeff() < 1e-6);

    const Frame spun = testutil::spin(fz, rng.uniform(0.0, 2.0 * M_PI));
    const Eigen::VectorXd spun_angles = principal_angles(fa, spun);
    CHECK((ab - spun_angles).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(ab(0) <= ab(1) + 1e-12);  // sorted
  }
}

TEST_CASE("plane_distance: zero iff same plane") {
  Rng rng(29);
  const Frame fa = testutil::random_frame(4, 2, rng);
  CHECK(plane_distance(fa, testutil::spin(fa, 1.1)) < 1e-14);
  const Frame other = testutil::random_frame(4, 2, rng);
  CHECK(plane_distance(fa, other) > 1e-3);
}

TEST_CASE("Frame: validation errors") {
  Eigen::MatrixXd notorth(3, 2);
  notorth << 1, 1, 0, 1, 0, 0;
  CHECK_THROWS_AS(Frame{notorth}, invalid_input);
  CHECK_THROWS_AS(Frame{Eigen::MatrixXd::Identity(3, 3)}, invalid_input);  // d > 2
  CHECK_THROWS_AS(Frame{Eigen::MatrixXd::Identity(1, 2)}, invalid_input);  // p < d
  Tolerances bad;
  bad.orth_tol = 0.0;
  CHECK_THROWS_AS(Frame(Eigen::MatrixXd::Identity(3, 2), bad), invalid_input);
}
