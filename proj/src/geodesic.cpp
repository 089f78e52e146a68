#include "frametour/geodesic.hpp"

#include <cmath>

#include "frametour/errors.hpp"
#include "frametour/linalg.hpp"

namespace frametour {
namespace {

// Out-of-plane residual below this is treated as a shared direction.
constexpr double kFrozenTol = 1e-12;

}  // namespace

GeodesicInfo geodesic_info(const Frame& fa, const Frame& fz, const Tolerances& tols) {
  validate(tols);
  if (fa.p() != fz.p() || fa.d() != fz.d()) {
    throw invalid_input("geodesic_info: frames must share p and d");
  }
  const int p = fa.p();
  const int d = fa.d();

  const Svd svd = svd_small(fa.basis().transpose() * fz.basis());
  const Eigen::MatrixXd ga = fa.basis() * svd.u;
  const Eigen::MatrixXd gz = fz.basis() * svd.v;

  // Principal angles from the (cos, sin) parts directly: acos of a singular
  // value near 1 loses half the digits, atan2 does not.
  Eigen::MatrixXd ortho = Eigen::MatrixXd::Zero(p, d);
  Eigen::VectorXd tau(d);
  for (int i = 0; i < d; ++i) {
    const double c = ga.col(i).dot(gz.col(i));
    Eigen::VectorXd v = gz.col(i) - c * ga.col(i);
    v -= ga * (ga.transpose() * v);  // clean-up sweep against the whole start plane
    const double s = v.norm();
    if (s < kFrozenTol) {
      tau(i) = 0.0;  // shared direction: no motion in this pair
    } else {
      tau(i) = std::atan2(s, std::min(c, 1.0));
      ortho.col(i) = v / s;
    }
  }

  GeodesicInfo info{fa, ga, gz, std::move(ortho), std::move(tau), svd.u, 0.0};
  info.total_angle = info.angles.norm();
  return info;
}

Frame geodesic_frame_at(const GeodesicInfo& info, double fraction, const Tolerances& tols) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw invalid_input("geodesic_frame_at: fraction must lie in [0, 1]");
  }
  const int d = static_cast<int>(info.angles.size());
  Eigen::MatrixXd x(info.aligned_start.rows(), d);
  for (int i = 0; i < d; ++i) {
    const double a = fraction * info.angles(i);
    x.col(i) = std::cos(a) * info.aligned_start.col(i) + std::sin(a) * info.ortho.col(i);
  }
  // Undo the start alignment so the motion begins at the start frame itself.
  return Frame(x * info.align_rot.transpose(), tols);
}

GeodesicPath geodesic_full_path(const Frame& fa, const Frame& fz, int nsteps,
                                const Tolerances& tols) {
  validate(tols);
  if (nsteps < 1) throw invalid_input("geodesic_full_path: nsteps must be >= 1");
  const GeodesicInfo info = geodesic_info(fa, fz, tols);

  GeodesicPath path{{},
                    info.angles,
                    Frame(info.aligned_start, tols),
                    Frame(info.aligned_target, tols),
                    info.total_angle,
                    info.total_angle / nsteps};
  path.frames.reserve(static_cast<std::size_t>(nsteps) + 1);
  path.frames.push_back(fa);  // exact
  for (int k = 1; k <= nsteps; ++k) {
    path.frames.push_back(geodesic_frame_at(info, static_cast<double>(k) / nsteps, tols));
  }
  if (plane_distance(path.frames.back(), fz) > tols.arrival_tol) {
    throw numerical_failure("geodesic_full_path: endpoint missed the target plane");
  }
  return path;
}

}  // namespace frametour
