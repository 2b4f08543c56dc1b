#pragma once

#include <cstdint>
#include <random>

#include "qestkit/types.hpp"

namespace qestkit {

// Deterministic random source. The engine is mt19937_64 and every
// transform from raw bits to doubles is written out here, so a seed
// produces the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 42) : engine_(seed) {}

  // Uniform on [0, 1) from the top 53 bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the paired value is cached.
  double normal();

  // Matrix with independent N(0,1) + i N(0,1) entries.
  Matrix complex_gaussian(int d);

  Matrix hermitian(int d);
  Matrix traceless_hermitian(int d);

  // Haar-like unitary: the eigenbasis of a random Hermitian matrix.
  // Exactly unitary by construction, which is what the tests care about.
  Matrix unitary(int d);

  // Probability vector with every entry at least 0.05 before
  // normalization, keeping random states far from rank deficiency.
  RealVector spectrum(int d);

  RealMatrix positive_weight(int n);  // symmetric, eigenvalues >= 0.1

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Reads QESTKIT_SEED from the environment, falling back to 42.
std::uint64_t default_seed();

}  // namespace qestkit
