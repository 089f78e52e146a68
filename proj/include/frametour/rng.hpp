#pragma once

#include <cstdint>
#include <random>

namespace frametour {

/// Deterministic random source. The uniform and normal draws are implemented
/// on top of the raw 64-bit stream, so a given seed produces the same sequence
/// on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();  ///< in [0, 1)
  double uniform(double lo, double hi);
  double normal();   ///< standard normal (Marsaglia polar)

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace frametour
