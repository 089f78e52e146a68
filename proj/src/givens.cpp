#include "frametour/givens.hpp"

#include <cmath>
#include <utility>

#include "frametour/errors.hpp"
#include "frametour/linalg.hpp"

namespace frametour {
namespace {

// Below this pair norm the rotation target is a null vector and the angle is
// taken as zero (any angle would do; zero is continuous with neighbors).
constexpr double kNullPairTol = 1e-12;

// Residual norm below which a target column lies inside the span built so far.
constexpr double kRankTol = 1e-12;

Eigen::MatrixXd canonical_preframe(Eigen::Index rows, Eigen::Index cols) {
  return Eigen::MatrixXd::Identity(rows, cols);
}

struct ZeroRun {
  GivensSequence seq;
  Eigen::MatrixXd final;  // what the rotations turned wz into; E_d on success
};

// Zeroes the below-diagonal entries of wz column by column. Column k uses
// rows k+1..q-1 in order; each step rotates the pair (w_kk, w_jk) onto
// (norm, 0). Diagonal entries end at +1 whenever the column had at least one
// pair; a trailing column without rows below it may be left at -1, which the
// caller resolves by padding the basis.
ZeroRun run_zeroing(const Eigen::MatrixXd& wz) {
  const int q = static_cast<int>(wz.rows());
  const int d = static_cast<int>(wz.cols());
  ZeroRun out;
  out.seq.rows = q;
  out.seq.cols = d;
  Eigen::MatrixXd w = wz;
  for (int col = 0; col < d; ++col) {
    for (int row = col + 1; row < q; ++row) {
      const double wi = w(col, col);
      const double wj = w(row, col);
      const double nrm = std::hypot(wi, wj);
      const double theta = nrm < kNullPairTol ? 0.0 : std::atan2(wj, wi);
      if (theta != 0.0) w = row_rot(w, col, row, -theta);
      out.seq.rotations.push_back(GivensRotation{col, row, theta});
    }
  }
  out.final = std::move(w);
  return out;
}

void check_pair_shapes(const Frame& fa, const Frame& fz, const char* who) {
  if (fa.p() != fz.p() || fa.d() != fz.d()) {
    throw invalid_input(std::string(who) + ": start and target frames must share p and d");
  }
}

}  // namespace

double GivensSequence::total_angle() const {
  double sumsq = 0.0;
  for (const auto& r : rotations) sumsq += r.theta * r.theta;
  return std::sqrt(sumsq);
}

Eigen::MatrixXd row_rot(const Eigen::MatrixXd& m, int i, int j, double theta) {
  if (i < 0 || j <= i || j >= m.rows()) {
    throw invalid_input("row_rot: need 0 <= i < j < rows");
  }
  if (!std::isfinite(theta)) throw invalid_input("row_rot: angle must be finite");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::MatrixXd out = m;
  out.row(i) = c * m.row(i) - s * m.row(j);
  out.row(j) = s * m.row(i) + c * m.row(j);
  return out;
}

PreprojectionBasis preprojection(const Frame& fa, const Frame& fz, const Tolerances& tols) {
  validate(tols);
  check_pair_shapes(fa, fz, "preprojection");
  const Frame fstar = orthogonal_complement(fz, fa, tols);  // throws shared_subspace on overlap
  Eigen::MatrixXd b(fa.p(), 2 * fa.d());
  b << fa.basis(), fstar.basis();
  return PreprojectionBasis{std::move(b), fa.d()};
}

PreFrame construct_preframe(const Frame& f, const PreprojectionBasis& basis,
                            const Tolerances& tols) {
  validate(tols);
  if (f.p() != basis.p()) throw invalid_input("construct_preframe: dimension mismatch");
  Eigen::MatrixXd w = basis.b.transpose() * f.basis();
  if (max_abs_diff(f.basis(), basis.b * w) > tols.orth_tol) {
    throw subspace_violation("construct_preframe: frame lies outside the preprojection subspace");
  }
  return PreFrame{std::move(w)};
}

GivensSequence calculate_angles(const PreFrame& wa, const PreFrame& wz, const Tolerances& tols) {
  validate(tols);
  if (wa.w.rows() != wz.w.rows() || wa.w.cols() != wz.w.cols()) {
    throw invalid_input("calculate_angles: preframes must share shape");
  }
  if (max_abs_diff(wa.w, canonical_preframe(wa.w.rows(), wa.w.cols())) > tols.orth_tol) {
    throw invalid_input("calculate_angles: start preframe must be the canonical E_d");
  }
  if (!is_orthonormal(wz.w, tols.orth_tol)) {
    throw invalid_input("calculate_angles: target preframe is not orthonormal");
  }
  ZeroRun zr = run_zeroing(wz.w);
  const double err =
      max_abs_diff(zr.final, canonical_preframe(wz.w.rows(), wz.w.cols()));
  if (err > 1.0) {
    throw degenerate_input(
        "calculate_angles: target is a reflection of the start plane; the preprojection basis "
        "needs an extra direction (see givens_info)");
  }
  if (err > tols.arrival_tol) {
    throw numerical_failure("calculate_angles: zeroing failed to reach E_d");
  }
  return std::move(zr.seq);
}

PreFrame interpolate_preframe(const GivensSequence& seq, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw invalid_input("interpolate_preframe: fraction must lie in [0, 1]");
  }
  Eigen::MatrixXd w = canonical_preframe(seq.rows, seq.cols);
  // Reversed sequence with scaled angles; fraction 1 lands on Wz.
  for (auto it = seq.rotations.rbegin(); it != seq.rotations.rend(); ++it) {
    const double angle = fraction * it->theta;
    if (angle != 0.0) w = row_rot(w, it->i, it->j, angle);
  }
  return PreFrame{std::move(w)};
}

Frame construct_moving_frame(const PreFrame& w, const PreprojectionBasis& basis,
                             const Tolerances& tols) {
  if (w.w.rows() != basis.q()) throw invalid_input("construct_moving_frame: shape mismatch");
  return Frame(basis.b * w.w, tols);
}

GivensInfo givens_info(const Frame& fa, const Frame& fz, const Tolerances& tols) {
  validate(tols);
  check_pair_shapes(fa, fz, "givens_info");
  const int p = fa.p();
  const int d = fa.d();

  // Joint basis: the start frame itself plus whatever part of the target
  // falls outside its span. Overlapping planes simply yield fewer columns.
  Eigen::MatrixXd res = detail::residual_columns(fa.basis(), fz.basis(), kRankTol);
  Eigen::MatrixXd b(p, d + res.cols());
  b << fa.basis(), res;

  Eigen::MatrixXd wz = b.transpose() * fz.basis();
  ZeroRun zr = run_zeroing(wz);
  if (max_abs_diff(zr.final, canonical_preframe(b.cols(), d)) > tols.arrival_tol) {
    // The target reverses orientation inside the shared plane. Rotations can
    // only reach it through one extra dimension, so pad the basis with the
    // coordinate direction least represented in it.
    if (b.cols() >= p) {
      throw degenerate_input(
          "givens_info: target frame reverses orientation and the joint subspace already fills "
          "R^p; no rotation path exists");
    }
    Eigen::VectorXd pad;
    double best = -1.0;
    for (int k = 0; k < p; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(p, k);
      v -= b * (b.transpose() * v);
      v -= b * (b.transpose() * v);
      const double nrm = v.norm();
      if (nrm > best) {
        best = nrm;
        pad = v / nrm;
      }
    }
    Eigen::MatrixXd padded(p, b.cols() + 1);
    padded << b, pad;
    b = std::move(padded);
    wz = b.transpose() * fz.basis();
    zr = run_zeroing(wz);
    if (max_abs_diff(zr.final, canonical_preframe(b.cols(), d)) > tols.arrival_tol) {
      throw numerical_failure("givens_info: zeroing failed after padding the basis");
    }
  }

  GivensInfo info{PreprojectionBasis{std::move(b), d},
                  PreFrame{canonical_preframe(wz.rows(), d)}, PreFrame{std::move(wz)},
                  std::move(zr.seq)};
  return info;
}

Frame givens_frame_at(const GivensInfo& info, double fraction, const Tolerances& tols) {
  return construct_moving_frame(interpolate_preframe(info.sequence, fraction), info.basis, tols);
}

InterpolationPath givens_full_path(const Frame& fa, const Frame& fz, int nsteps,
                                   const Tolerances& tols) {
  validate(tols);
  if (nsteps < 1) throw invalid_input("givens_full_path: nsteps must be >= 1");
  check_pair_shapes(fa, fz, "givens_full_path");

  InterpolationPath path;
  if (fa.basis() == fz.basis()) {
    // Already there: a degenerate single-frame path.
    path.frames.push_back(fa);
    path.sequence.rows = fa.d();
    path.sequence.cols = fa.d();
    path.basis = fa.basis();
    return path;
  }

  const GivensInfo info = givens_info(fa, fz, tols);
  path.sequence = info.sequence;
  path.basis = info.basis.b;
  path.total_angle = info.sequence.total_angle();
  path.step_angle = path.total_angle / nsteps;
  path.frames.reserve(static_cast<std::size_t>(nsteps) + 1);
  path.frames.push_back(fa);  // exact, not reconstructed
  for (int k = 1; k <= nsteps; ++k) {
    path.frames.push_back(givens_frame_at(info, static_cast<double>(k) / nsteps, tols));
  }
  if (max_abs_diff(path.frames.back().basis(), fz.basis()) > tols.arrival_tol) {
    throw numerical_failure("givens_full_path: endpoint missed the target frame");
  }
  return path;
}

int steps_for_speed(const GivensSequence& seq, double delta) {
  if (!(delta > 0.0)) throw invalid_input("steps_for_speed: delta must be positive");
  const double total = seq.total_angle();
  const int n = static_cast<int>(std::ceil(total / delta));
  return n < 1 ? 1 : n;
}

}  // namespace frametour
