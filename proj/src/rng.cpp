#include "qestkit/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qestkit/algebra.hpp"

namespace qestkit {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] x [0,1) uniforms.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Matrix Rng::complex_gaussian(int d) {
  Matrix m(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const double re = normal();
      const double im = normal();
      m(j, k) = Complex(re, im);
    }
  return m;
}

Matrix Rng::hermitian(int d) { return hermitize(complex_gaussian(d)); }

Matrix Rng::traceless_hermitian(int d) {
  Matrix m = hermitian(d);
  m -= (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
  return m;
}

Matrix Rng::unitary(int d) { return hermitian_eigensystem(hermitian(d)).vectors; }

RealVector Rng::spectrum(int d) {
  RealVector p(d);
  double sum = 0.0;
  for (int j = 0; j < d; ++j) {
    p[j] = uniform(0.05, 1.0);
    sum += p[j];
  }
  return p / sum;
}

RealMatrix Rng::positive_weight(int n) {
  RealMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) a(j, k) = normal();
  return a.transpose() * a + 0.1 * RealMatrix::Identity(n, n);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QESTKIT_SEED")) {
    try {
      return std::stoull(std::string(env));
    } catch (const std::exception&) {
      throw InputError("QESTKIT_SEED is not an unsigned integer");
    }
  }
  return 42;
}

}  // namespace qestkit
