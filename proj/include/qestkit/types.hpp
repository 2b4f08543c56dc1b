#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qestkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;      // dense complex; dimensions stay small (d <= 8)
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Error categories map onto CLI exit codes: InputError -> 1,
// RegularityError -> 2, SolverError -> 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range caller input (bad JSON, wrong dimensions,
// parameters outside a model's domain).
struct InputError : Error {
  using Error::Error;
};

// A state or model violates a rank/regularity precondition: rank-deficient
// state, singular Fisher matrix, linearly dependent derivatives.
struct RegularityError : Error {
  using Error::Error;
};

// An iterative routine exhausted its budget without meeting its stop rule.
struct SolverError : Error {
  using Error::Error;
};

// Numerical thresholds shared across modules. Values are part of the
// documented behavior; tests pin them.
namespace tol {

// Admissibility of Hermitian inputs, relative to matrix scale.
inline constexpr double kHermitian = 1e-10;
// |tr(rho) - 1| bound for density matrices.
inline constexpr double kUnitTrace = 1e-10;
// Smallest admissible state eigenvalue; below this the state counts as
// rank-deficient and score operators are refused.
inline constexpr double kFullRank = 1e-10;
// |tr(drho)| bound for tangent-space inputs.
inline constexpr double kTraceless = 1e-10;
// Minimum Gram eigenvalue for linear independence of derivatives.
inline constexpr double kGram = 1e-10;
// Jacobi eigensolver: off-diagonal Frobenius target relative to ||A||_F,
// and the sweep cap after which it reports failure.
inline constexpr double kJacobiOff = 1e-13;
inline constexpr int kJacobiSweeps = 100;
// Condition number above which matrix inversions set a warning flag.
inline constexpr double kCondWarn = 1e12;
// Default classification tolerance on normalized residuals.
inline constexpr double kClassify = 1e-8;

}  // namespace tol

}  // namespace qestkit
