#pragma once

#include <stdexcept>
#include <string>

namespace frametour {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad shapes, non-finite values, unknown names, out-of-range indices.
class invalid_input : public error {
 public:
  using error::error;
};

/// Structurally valid input that is numerically unusable (rank deficiency, zero variance, ...).
class degenerate_input : public error {
 public:
  using error::error;
};

/// Start and target frames span overlapping planes where a full-rank complement was required.
class shared_subspace : public degenerate_input {
 public:
  using degenerate_input::degenerate_input;
};

/// A frame that was required to lie inside a given subspace does not.
class subspace_violation : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

/// An iterative or factorization step failed to deliver the promised accuracy.
class numerical_failure : public error {
 public:
  using error::error;
};

/// Malformed file contents; the message carries the location.
class parse_error : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

/// Filesystem-level failure (open, read, write).
class io_error : public error {
 public:
  using error::error;
};

}  // namespace frametour
