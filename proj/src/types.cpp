#include "frametour/types.hpp"

#include "frametour/errors.hpp"
#include "frametour/linalg.hpp"

namespace frametour {

void validate(const Tolerances& tols) {
  if (!(tols.orth_tol > 0.0) || !(tols.arrival_tol > 0.0) || !(tols.angle_tol > 0.0)) {
    throw invalid_input("tolerances must be strictly positive");
  }
}

Frame::Frame(Eigen::MatrixXd basis, const Tolerances& tols) : basis_(std::move(basis)) {
  validate(tols);
  if (basis_.cols() < 1 || basis_.rows() < basis_.cols()) {
    throw invalid_input("frame must be p x d with p >= d >= 1");
  }
  if (basis_.cols() > 2) {
    throw invalid_input("only 1-d and 2-d projection frames are supported");
  }
  if (!basis_.allFinite()) {
    throw invalid_input("frame entries must be finite");
  }
  if (!is_orthonormal(basis_, tols.orth_tol)) {
    throw invalid_input("frame columns are not orthonormal");
  }
}

}  // namespace frametour
