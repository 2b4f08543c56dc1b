#include <doctest.h>

#include "qestkit/algebra.hpp"
#include "qestkit/rng.hpp"

using namespace qestkit;

namespace {

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix test_state() {
  Matrix rho(2, 2);
  rho << 0.75, 0, 0, 0.25;
  return rho;
}

}  // namespace

TEST_CASE("hermitian eigensystem reconstructs and sorts ascending") {
  Rng rng(11);
  for (int d : {2, 3, 5, 8}) {
    const Matrix a = rng.hermitian(d);
    const Eigensystem es = hermitian_eigensystem(a);
    const Matrix rebuilt =
        es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    CHECK(rel_residual(rebuilt, a) < 1e-13);
    CHECK(rel_residual(Matrix(es.vectors.adjoint() * es.vectors),
                       Matrix(Matrix::Identity(d, d))) < 1e-13);
    for (int i = 0; i + 1 < d; ++i) CHECK(es.values[i] <= es.values[i + 1]);
  }
}

TEST_CASE("eigensystem of (I + 0.5 sigma_x)/2") {
  Matrix rho = 0.5 * (Matrix::Identity(2, 2) + 0.5 * sigma_x());
  const StateEigensystem eig = state_eigensystem(rho);
  CHECK(eig.p[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(eig.p[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("state_eigensystem input validation") {
  Matrix bad(2, 2);
  bad << 0.5, Complex(0.1, 0.2), Complex(0.3, 0.1), 0.5;
  CHECK_THROWS_AS(state_eigensystem(bad), InputError);  // not Hermitian

  Matrix scaled = 2.0 * test_state();
  CHECK_THROWS_AS(state_eigensystem(scaled), InputError);  // trace 2

  Matrix pure(2, 2);
  pure << 1, 0, 0, 0;
  CHECK_THROWS_AS(state_eigensystem(pure), RegularityError);  // rank 1

  Matrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(state_eigensystem(rect), InputError);
}

TEST_CASE("solve_sld on diagonal state") {
  const StateEigensystem eig = state_eigensystem(test_state());

  // drho = sigma_x / 2 has L = sigma_x
  CHECK((solve_sld(eig, 0.5 * sigma_x()) - sigma_x()).norm() < 1e-13);

  // diagonal drho: L = drho_jj / p_j elementwise on the diagonal
  Matrix dz(2, 2);
  dz << 0.5, 0, 0, -0.5;
  const Matrix l = solve_sld(eig, dz);
  CHECK(l(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(l(1, 1).real() == doctest::Approx(-2.0).epsilon(1e-12));

  // defining equation holds for random tangents
  Rng rng(3);
  for (int k = 0; k < 5; ++k) {
    const Matrix drho = rng.traceless_hermitian(2);
    const Matrix lk = solve_sld(eig, drho);
    const Matrix back = 0.5 * (eig.rho * lk + lk * eig.rho);
    CHECK(rel_residual(back, drho) < 1e-13);
  }
}

TEST_CASE("solve_rld on diagonal state") {
  const StateEigensystem eig = state_eigensystem(test_state());
  const Matrix lt = solve_rld(eig, 0.5 * sigma_x());
  CHECK(lt(0, 0).real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lt(0, 1).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(lt(1, 0).real() == doctest::Approx(2.0).epsilon(1e-12));

  // defining equation rho * Lt = drho
  Rng rng(4);
  for (int k = 0; k < 5; ++k) {
    const Matrix drho = rng.traceless_hermitian(2);
    const Matrix ltk = solve_rld(eig, drho);
    CHECK(rel_residual(Matrix(eig.rho * ltk), drho) < 1e-13);
  }
}

TEST_CASE("score solvers reject non-tangent inputs") {
  const StateEigensystem eig = state_eigensystem(test_state());
  CHECK_THROWS_AS(solve_sld(eig, Matrix(Matrix::Identity(2, 2))), InputError);
  Matrix nh(2, 2);
  nh << 0, 1, 2, 0;
  CHECK_THROWS_AS(solve_sld(eig, nh), InputError);
  CHECK_THROWS_AS(solve_rld(eig, Matrix(Matrix::Identity(2, 2))), InputError);
}

TEST_CASE("inner products on the diagonal state") {
  const Matrix rho = test_state();
  // tr(rho sigma_y sigma_x) = -0.5 i
  const Complex r = rld_inner(rho, sigma_x(), sigma_y());
  CHECK(std::abs(r - Complex(0.0, -0.5)) < 1e-13);
  // symmetric product averages the commutator away
  const Complex s = sld_inner(rho, sigma_x(), sigma_y());
  CHECK(std::abs(s) < 1e-13);
  // sld_inner of  X with itself is the second moment
  const Complex n = sld_inner(rho, sigma_x(), sigma_x());
  CHECK(std::abs(n - Complex(1.0, 0.0)) < 1e-13);
}

TEST_CASE("commutation superoperator") {
  const StateEigensystem eig = state_eigensystem(test_state());
  // D(sigma_x) = 0.5 sigma_y at this state
  CHECK((commutation_superop(eig, sigma_x()) - 0.5 * sigma_y()).norm() < 1e-13);

  // defining identity [rho, X] = i (rho D(X) + D(X) rho) on random Hermitian X
  Rng rng(5);
  for (int d : {2, 3, 4}) {
    const Matrix rho = [&] {
      const RealVector p = rng.spectrum(d);
      const Matrix u = rng.unitary(d);
      return Matrix(u * p.cast<Complex>().asDiagonal() * u.adjoint());
    }();
    const StateEigensystem e = state_eigensystem(hermitize(rho));
    for (int k = 0; k < 3; ++k) {
      const Matrix x = rng.hermitian(d);
      const Matrix dx = commutation_superop(e, x);
      const Matrix lhs = e.rho * x - x * e.rho;
      const Matrix rhs = Complex(0, 1) * (e.rho * dx + dx * e.rho);
      CHECK(rel_residual(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("trace norm") {
  Matrix d(2, 2);
  d << 1, 0, 0, -2;
  CHECK(trace_norm(d) == doctest::Approx(3.0).epsilon(1e-12));

  // anti-Hermitian input
  Matrix skew = Complex(0, 1) * d;
  CHECK(trace_norm(skew) == doctest::Approx(3.0).epsilon(1e-12));

  // general input: singular values of [[0, 3], [0, 0]]
  Matrix n(2, 2);
  n << 0, 3, 0, 0;
  CHECK(trace_norm(n) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("orthonormal complement of the score span") {
  const StateEigensystem eig = state_eigensystem(test_state());
  std::vector<Matrix> spanners{Matrix::Identity(2, 2), sigma_x()};
  const std::vector<Matrix> basis = sld_orthonormal_complement(eig, spanners);
  REQUIRE(basis.size() == 2);
  for (const Matrix& b : basis) {
    CHECK(is_hermitian(b));
    CHECK(std::abs(sld_inner(eig.rho, b, b) - Complex(1, 0)) < 1e-12);
    for (const Matrix& s : spanners)
      CHECK(std::abs(sld_inner(eig.rho, s, b)) < 1e-12);
  }
  CHECK(std::abs(sld_inner(eig.rho, basis[0], basis[1])) < 1e-12);

  // linearly dependent spanners are refused
  std::vector<Matrix> dependent{sigma_x(), sigma_x()};
  CHECK_THROWS_AS(sld_orthonormal_complement(eig, dependent), RegularityError);
}

TEST_CASE("hermitian inverse and square root") {
  Rng rng(6);
  const Matrix a = [&] {
    const Matrix h = rng.hermitian(3);
    return Matrix(h * h.adjoint() + 0.5 * Matrix::Identity(3, 3));
  }();
  bool ill = true;
  double cond = 0;
  const Matrix inv = hermitian_inverse(a, &ill, &cond);
  CHECK(rel_residual(Matrix(a * inv), Matrix(Matrix::Identity(3, 3))) < 1e-12);
  CHECK_FALSE(ill);
  CHECK(cond >= 1.0);

  const Matrix r = hermitian_sqrt(a);
  CHECK(rel_residual(Matrix(r * r), a) < 1e-12);

  // near-singular input sets the flag
  Matrix s(2, 2);
  s << 1, 0, 0, 1e-14;
  bool flagged = false;
  hermitian_inverse(s, &flagged);
  CHECK(flagged);
}

TEST_CASE("rel_residual normalization") {
  Matrix a = Matrix::Identity(2, 2);
  CHECK(rel_residual(a, a) == 0.0);
  CHECK(rel_residual(2.0, 1.0) == doctest::Approx(0.5));
  CHECK(rel_residual(1e-20, 0.0) == doctest::Approx(1e-20));
}
