#include <doctest.h>

#include <cmath>

#include "frametour/errors.hpp"
#include "frametour/geodesic.hpp"
#include "frametour/givens.hpp"
#include "frametour/linalg.hpp"
#include "frametour/rng.hpp"
#include "test_util.hpp"

using namespace frametour;

TEST_CASE("geodesic_full_path: identical frames give a constant path") {
  Rng rng(31);
  const Frame fa = testutil::random_frame(5, 2, rng);
  const GeodesicPath path = geodesic_full_path(fa, fa, 4);
  REQUIRE(path.frames.size() == 5);
  for (const auto& f : path.frames) {
    CHECK(max_abs_diff(f.basis(), fa.basis()) < 1e-12);
  }
  CHECK(path.total_angle < 1e-12);
}

TEST_CASE("geodesic_full_path: 1-d sign flip stays put (same plane)") {
  Rng rng(32);
  const Frame fa = testutil::random_frame(4, 1, rng);
  const Frame fz{-fa.basis()};
  const GeodesicPath path = geodesic_full_path(fa, fz, 5);
  CHECK(path.total_angle < 1e-12);
  // endpoint spans the plane but is the flipped frame, far from fz itself
  CHECK(plane_distance(path.frames.back(), fz) < 1e-10);
  CHECK(max_abs_diff(path.frames.back().basis(), fz.basis()) > 1.0);
}

TEST_CASE("geodesic_full_path: random pairs reach the plane, typically not the frame") {
  Rng rng(33);
  int frame_misses = 0;
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 1 + rep % 2;
    const Frame fa = testutil::random_frame(6, d, rng);
    const Frame fz = testutil::random_frame(6, d, rng);
    const GeodesicPath path = geodesic_full_path(fa, fz, 7);
    REQUIRE(path.frames.size() == 8);
    CHECK((path.frames[0].basis().array() == fa.basis().array()).all());
    // projector oracle for plane arrival
    const Eigen::MatrixXd pz = testutil::span_projector(fz.basis());
    const Eigen::MatrixXd pe = path.frames.back().basis() * path.frames.back().basis().transpose();
    CHECK((pz - pe).cwiseAbs().maxCoeff() <= 1e-8);
    for (const auto& f : path.frames) CHECK(is_orthonormal(f, 1e-9));
    if (max_abs_diff(path.frames.back().basis(), fz.basis()) > 1e-6) ++frame_misses;
  }
  CHECK(frame_misses > 0);  // the frame itself is generally not preserved
}

TEST_CASE("geodesic path: no within-plane spin and equal angular speed") {
  Rng rng(34);
  const Frame fa = testutil::random_frame(6, 2, rng);
  const Frame fz = testutil::random_frame(6, 2, rng);
  const int nsteps = 9;
  const GeodesicPath path = geodesic_full_path(fa, fz, nsteps);

  // recover the alignment rotation: Ga = Fa Va  =>  Va = Fa^T Ga
  const Eigen::MatrixXd va = fa.basis().transpose() * path.aligned_start.basis();
  Eigen::MatrixXd prev_angles = Eigen::MatrixXd::Zero(2, 1);
  for (int k = 0; k <= nsteps; ++k) {
    const Eigen::MatrixXd aligned = path.frames[k].basis() * va;
    const Eigen::MatrixXd d = aligned.transpose() * path.aligned_start.basis();
    CHECK(std::abs(d(0, 1)) < 1e-6);  // stays diagonal after principal alignment
    CHECK(std::abs(d(1, 0)) < 1e-6);
    for (int i = 0; i < 2; ++i) {
      const double angle = std::acos(std::clamp(d(i, i), -1.0, 1.0));
      CHECK(std::abs(angle - k * path.principal_angles(i) / nsteps) < 1e-6);
    }
  }
}

TEST_CASE("geodesic vs givens contrast on a within-plane rotation target") {
  Rng rng(35);
  const Frame fa = testutil::random_frame(5, 2, rng);
  const Frame fz = testutil::spin(fa, 0.9);

  const GeodesicPath geo = geodesic_full_path(fa, fz, 6);
  CHECK(geo.total_angle < 1e-9);  // nothing to do at the plane level
  CHECK(max_abs_diff(geo.frames.back().basis(), fa.basis()) < 1e-9);

  const InterpolationPath giv = givens_full_path(fa, fz, 6);
  CHECK(giv.total_angle == doctest::Approx(0.9));  // non-trivial frame motion
  CHECK(max_abs_diff(giv.frames.back().basis(), fz.basis()) < 1e-10);
}

TEST_CASE("geodesic_info: principal angles ascend and aligned frames are orthonormal") {
  Rng rng(36);
  for (int rep = 0; rep < 10; ++rep) {
    const Frame fa = testutil::random_frame(6, 2, rng);
    const Frame fz = testutil::random_frame(6, 2, rng);
    const GeodesicInfo info = geodesic_info(fa, fz);
    CHECK(info.angles(0) <= info.angles(1) + 1e-12);
    CHECK(info.angles(0) >= 0.0);
    CHECK(info.angles(1) <= M_PI / 2 + 1e-12);
    CHECK(is_orthonormal(info.aligned_start, 1e-9));
    CHECK(is_orthonormal(info.aligned_target, 1e-9));
    CHECK(info.total_angle == doctest::Approx(info.angles.norm()));
  }
}
