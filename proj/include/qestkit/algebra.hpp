#pragma once

#include <vector>

#include "qestkit/types.hpp"

namespace qestkit {

// Frobenius norm shorthand; Eigen's .norm() already is Frobenius for
// matrices, this exists for symmetry with rel_residual.
double frobenius(const Matrix& a);

// Scale-aware distance used for every "A equals B" check in the library:
// ||A - B||_F / max(1, ||A||_F, ||B||_F).
double rel_residual(const Matrix& a, const Matrix& b);
double rel_residual(double a, double b);

// (A + A^dagger)/2.
Matrix hermitize(const Matrix& a);

bool is_hermitian(const Matrix& a, double tolerance = tol::kHermitian);

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations. Eigenvalues ascend; column j of `vectors` pairs with
// values[j]. Small dimensions make this robust without pivoting games.
struct Eigensystem {
  RealVector values;
  Matrix vectors;
};
Eigensystem hermitian_eigensystem(const Matrix& a);

// A validated full-rank density matrix together with its spectral data.
// Everything downstream that needs the eigenbasis takes this, so the
// decomposition happens once per point.
struct StateEigensystem {
  Matrix rho;     // hermitized copy of the input
  RealVector p;   // ascending, each > tol::kFullRank
  Matrix basis;   // unitary; rho = basis * diag(p) * basis^dagger
  int dim() const { return static_cast<int>(p.size()); }
};

// Validates hermiticity, unit trace and full rank, then decomposes.
// Throws InputError for a non-density input, RegularityError for rank.
StateEigensystem state_eigensystem(const Matrix& rho);

// Inner products on operators at the state rho:
//   sld_inner(X, Y) = tr(rho (Y X^dag + X^dag Y)) / 2
//   rld_inner(X, Y) = tr(rho Y X^dag)
// Both are linear in Y and conjugate-linear in X; sld_inner is real on
// Hermitian pairs.
Complex sld_inner(const Matrix& rho, const Matrix& x, const Matrix& y);
Complex rld_inner(const Matrix& rho, const Matrix& x, const Matrix& y);

// Symmetric logarithmic derivative: the Hermitian L solving
// drho = (rho L + L rho)/2, via L_jk = 2 drho_jk / (p_j + p_k) in the
// state eigenbasis. Requires Hermitian traceless drho.
Matrix solve_sld(const StateEigensystem& eig, const Matrix& drho);

// Right logarithmic derivative: L = rho^{-1} drho (generally non-normal).
Matrix solve_rld(const StateEigensystem& eig, const Matrix& drho);

// The commutation superoperator D defined by [rho, X] = i(rho D(X) + D(X) rho),
// acting entrywise in the eigenbasis as
//   D(X)_jk = -i (p_j - p_k)/(p_j + p_k) X_jk.
// Anti-selfadjoint under both inner products; its kernel is the commutant
// of rho.
Matrix commutation_superop(const StateEigensystem& eig, const Matrix& x);

// Sum of singular values. Hermitian and anti-Hermitian inputs take the
// exact eigenvalue route; anything else goes through sqrt(eig(A^dag A)).
double trace_norm(const Matrix& a);

// Extends `spanners` to an orthonormal basis of Hermitian operators under
// sld_inner at the given state and returns only the new elements, exactly
// d^2 - spanners.size() of them. Deterministic: candidates come from the
// canonical Hermitian basis (diagonal units E_jj, then (E_jk + E_kj)/sqrt2,
// then i(E_jk - E_kj)/sqrt2, each row-major) in fixed order.
// Throws RegularityError if the spanners are linearly dependent.
std::vector<Matrix> sld_orthonormal_complement(const StateEigensystem& eig,
                                               const std::vector<Matrix>& spanners);

// Inverse of a Hermitian matrix through its eigendecomposition. Sets
// *ill_conditioned when |lambda|_max / |lambda|_min exceeds tol::kCondWarn;
// throws RegularityError when numerically singular.
Matrix hermitian_inverse(const Matrix& a, bool* ill_conditioned = nullptr,
                         double* condition = nullptr);

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues within rounding of zero are clamped; genuinely negative
// ones raise InputError.
Matrix hermitian_sqrt(const Matrix& a);

}  // namespace qestkit
