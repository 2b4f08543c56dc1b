#include "qestkit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qestkit {

namespace {

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream msg;
    msg << who << ": expected a nonempty square matrix, got " << a.rows()
        << "x" << a.cols();
    throw InputError(msg.str());
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << who << ": dimension mismatch (" << a.rows() << "x" << a.cols()
        << " vs " << b.rows() << "x" << b.cols() << ")";
    throw InputError(msg.str());
  }
}

void require_hermitian(const Matrix& a, const char* who) {
  if (!is_hermitian(a)) {
    std::ostringstream msg;
    msg << who << ": input is not Hermitian within " << tol::kHermitian;
    throw InputError(msg.str());
  }
}

// Off-diagonal Frobenius norm, the Jacobi convergence measure.
double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = 0; q < a.cols(); ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

}  // namespace

double frobenius(const Matrix& a) { return a.norm(); }

double rel_residual(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "rel_residual");
  return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

double rel_residual(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

Matrix hermitize(const Matrix& a) {
  require_square(a, "hermitize");
  return 0.5 * (a + a.adjoint());
}

bool is_hermitian(const Matrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return (a - Matrix(a.adjoint())).norm() <= tolerance * std::max(1.0, a.norm());
}

Eigensystem hermitian_eigensystem(const Matrix& a) {
  require_square(a, "hermitian_eigensystem");
  require_hermitian(a, "hermitian_eigensystem");

  const Eigen::Index d = a.rows();
  Matrix w = hermitize(a);  // exact-Hermitian working copy
  Matrix v = Matrix::Identity(d, d);
  const double scale = std::max(w.norm(), std::numeric_limits<double>::min());

  bool done = off_diagonal_norm(w) <= tol::kJacobiOff * scale;
  for (int sweep = 0; sweep < tol::kJacobiSweeps && !done; ++sweep) {
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const double b = std::abs(w(p, q));
        if (b <= 1e-280) continue;  // rotation angle underflows; nothing to gain
        // Strip the phase so the 2x2 block is real symmetric, then apply
        // the classic symmetric Schur rotation to zero w(p,q).
        const Complex phase = w(p, q) / b;
        const double tau = (w(q, q).real() - w(p, p).real()) / (2.0 * b);
        double t;
        if (std::isinf(tau)) {
          t = 0.0;
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        }
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        // Columns of the plane rotation U (identity elsewhere):
        //   U(p,p) = c        U(p,q) = s
        //   U(q,p) = -s/phase U(q,q) = c/phase
        const Complex upp(c, 0.0), upq(s, 0.0);
        const Complex uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
        // w <- U^dag w U, applied as column then row updates.
        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex wkp = w(k, p), wkq = w(k, q);
          w(k, p) = wkp * upp + wkq * uqp;
          w(k, q) = wkp * upq + wkq * uqq;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex wpk = w(p, k), wqk = w(q, k);
          w(p, k) = std::conj(upp) * wpk + std::conj(uqp) * wqk;
          w(q, k) = std::conj(upq) * wpk + std::conj(uqq) * wqk;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        // Pin the rotated entries: exactly zero off the diagonal, exactly
        // real on it, so round-off cannot accumulate there.
        w(p, q) = Complex(0.0, 0.0);
        w(q, p) = Complex(0.0, 0.0);
        w(p, p) = Complex(w(p, p).real(), 0.0);
        w(q, q) = Complex(w(q, q).real(), 0.0);
      }
    }
    done = off_diagonal_norm(w) <= tol::kJacobiOff * scale;
  }
  if (!done) {
    throw SolverError("hermitian_eigensystem: Jacobi sweeps exhausted without "
                      "reaching the off-diagonal target");
  }

  Eigensystem out;
  out.values.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) out.values[j] = w(j, j).real();

  std::vector<Eigen::Index> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return out.values[i] < out.values[j];
  });
  RealVector sorted(d);
  Matrix vectors(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    sorted[j] = out.values[order[static_cast<size_t>(j)]];
    vectors.col(j) = v.col(order[static_cast<size_t>(j)]);
    // Fix the free phase: largest-magnitude component made real positive.
    Eigen::Index imax = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex lead = vectors(imax, j);
    if (std::abs(lead) > 0.0) vectors.col(j) *= std::conj(lead) / std::abs(lead);
  }
  out.values = std::move(sorted);
  out.vectors = std::move(vectors);
  return out;
}

StateEigensystem state_eigensystem(const Matrix& rho) {
  require_square(rho, "state_eigensystem");
  require_hermitian(rho, "state_eigensystem");
  const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (tr_err > tol::kUnitTrace) {
    std::ostringstream msg;
    msg << "state_eigensystem: trace deviates from 1 by " << tr_err;
    throw InputError(msg.str());
  }

  StateEigensystem out;
  out.rho = hermitize(rho);
  Eigensystem es = hermitian_eigensystem(out.rho);
  if (es.values.minCoeff() <= tol::kFullRank) {
    std::ostringstream msg;
    msg << "state_eigensystem: state is not full rank (smallest eigenvalue "
        << es.values.minCoeff() << ", threshold " << tol::kFullRank << ")";
    throw RegularityError(msg.str());
  }
  out.p = std::move(es.values);
  out.basis = std::move(es.vectors);
  return out;
}

Complex sld_inner(const Matrix& rho, const Matrix& x, const Matrix& y) {
  require_square(rho, "sld_inner");
  require_same_dim(rho, x, "sld_inner");
  require_same_dim(rho, y, "sld_inner");
  return 0.5 * (rho * (y * x.adjoint() + x.adjoint() * y)).trace();
}

Complex rld_inner(const Matrix& rho, const Matrix& x, const Matrix& y) {
  require_square(rho, "rld_inner");
  require_same_dim(rho, x, "rld_inner");
  require_same_dim(rho, y, "rld_inner");
  return (rho * y * x.adjoint()).trace();
}

namespace {

void require_tangent(const Matrix& drho, const char* who) {
  require_hermitian(drho, who);
  const double tr = std::abs(drho.trace());
  if (tr > tol::kTraceless * std::max(1.0, drho.norm())) {
    std::ostringstream msg;
    msg << who << ": drho is not traceless (|tr| = " << tr << ")";
    throw InputError(msg.str());
  }
}

}  // namespace

Matrix solve_sld(const StateEigensystem& eig, const Matrix& drho) {
  require_same_dim(eig.rho, drho, "solve_sld");
  require_tangent(drho, "solve_sld");
  const Eigen::Index d = eig.rho.rows();
  Matrix hat = eig.basis.adjoint() * drho * eig.basis;
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      hat(j, k) *= 2.0 / (eig.p[j] + eig.p[k]);
  return hermitize(eig.basis * hat * eig.basis.adjoint());
}

Matrix solve_rld(const StateEigensystem& eig, const Matrix& drho) {
  require_same_dim(eig.rho, drho, "solve_rld");
  require_tangent(drho, "solve_rld");
  const Eigen::Index d = eig.rho.rows();
  Matrix hat = eig.basis.adjoint() * drho * eig.basis;
  for (Eigen::Index j = 0; j < d; ++j) hat.row(j) /= eig.p[j];
  return eig.basis * hat * eig.basis.adjoint();
}

Matrix commutation_superop(const StateEigensystem& eig, const Matrix& x) {
  require_same_dim(eig.rho, x, "commutation_superop");
  const Eigen::Index d = eig.rho.rows();
  Matrix hat = eig.basis.adjoint() * x * eig.basis;
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      hat(j, k) *= Complex(0.0, -1.0) * ((eig.p[j] - eig.p[k]) / (eig.p[j] + eig.p[k]));
  return eig.basis * hat * eig.basis.adjoint();
}

double trace_norm(const Matrix& a) {
  require_square(a, "trace_norm");
  const double scale = std::max(1.0, a.norm());
  if ((a - Matrix(a.adjoint())).norm() <= 1e-12 * scale) {
    return hermitian_eigensystem(hermitize(a)).values.cwiseAbs().sum();
  }
  if ((a + Matrix(a.adjoint())).norm() <= 1e-12 * scale) {
    // i*A is Hermitian; singular values are |eigenvalues| of it.
    return hermitian_eigensystem(hermitize(Complex(0.0, 1.0) * a)).values.cwiseAbs().sum();
  }
  Eigensystem gram = hermitian_eigensystem(hermitize(a.adjoint() * a));
  double sum = 0.0;
  for (Eigen::Index j = 0; j < gram.values.size(); ++j)
    sum += std::sqrt(std::max(0.0, gram.values[j]));
  return sum;
}

std::vector<Matrix> sld_orthonormal_complement(const StateEigensystem& eig,
                                               const std::vector<Matrix>& spanners) {
  const Eigen::Index d = eig.rho.rows();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  std::vector<Matrix> candidates;
  candidates.reserve(static_cast<size_t>(d * d));
  for (Eigen::Index j = 0; j < d; ++j) {
    Matrix e = Matrix::Zero(d, d);
    e(j, j) = 1.0;
    candidates.push_back(std::move(e));
  }
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      Matrix e = Matrix::Zero(d, d);
      e(j, k) = e(k, j) = inv_sqrt2;
      candidates.push_back(std::move(e));
    }
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      Matrix e = Matrix::Zero(d, d);
      e(j, k) = Complex(0.0, inv_sqrt2);
      e(k, j) = Complex(0.0, -inv_sqrt2);
      candidates.push_back(std::move(e));
    }

  // Modified Gram-Schmidt with one re-orthogonalization pass. Coefficients
  // are real because all participants are Hermitian and the metric is real
  // on Hermitian pairs.
  std::vector<Matrix> ortho;  // spanners first, then accepted candidates
  auto project_out = [&](Matrix& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& o : ortho)
        v -= sld_inner(eig.rho, o, v).real() * o;
  };

  for (size_t i = 0; i < spanners.size(); ++i) {
    require_same_dim(eig.rho, spanners[i], "sld_orthonormal_complement");
    require_hermitian(spanners[i], "sld_orthonormal_complement");
    Matrix v = spanners[i];
    const double before = sld_inner(eig.rho, v, v).real();
    project_out(v);
    const double after = sld_inner(eig.rho, v, v).real();
    if (after <= tol::kGram * std::max(1.0, before)) {
      std::ostringstream msg;
      msg << "sld_orthonormal_complement: spanner " << i
          << " is linearly dependent on the previous ones in the SLD metric";
      throw RegularityError(msg.str());
    }
    ortho.push_back(v / std::sqrt(after));
  }

  std::vector<Matrix> out;
  for (Matrix& v : candidates) {
    project_out(v);
    const double n2 = sld_inner(eig.rho, v, v).real();
    // Genuine new directions keep norm^2 >= p_min; exhausted ones collapse
    // to rounding noise around 1e-30. The gap is many orders wide.
    if (n2 > 1e-20) {
      ortho.push_back(v / std::sqrt(n2));
      out.push_back(ortho.back());
    }
  }
  if (out.size() != static_cast<size_t>(d * d) - spanners.size()) {
    std::ostringstream msg;
    msg << "sld_orthonormal_complement: expected "
        << (static_cast<size_t>(d * d) - spanners.size())
        << " complement elements, selected " << out.size();
    throw Error(msg.str());
  }
  return out;
}

Matrix hermitian_inverse(const Matrix& a, bool* ill_conditioned, double* condition) {
  Eigensystem es = hermitian_eigensystem(a);
  const double amax = es.values.cwiseAbs().maxCoeff();
  const double amin = es.values.cwiseAbs().minCoeff();
  if (amin <= amax * 1e-15 || amin == 0.0) {
    throw RegularityError("hermitian_inverse: matrix is numerically singular");
  }
  const double cond = amax / amin;
  if (condition != nullptr) *condition = cond;
  if (ill_conditioned != nullptr) *ill_conditioned = cond > tol::kCondWarn;
  Matrix scaled = es.vectors;
  for (Eigen::Index j = 0; j < es.values.size(); ++j)
    scaled.col(j) /= es.values[j];
  return hermitize(scaled * es.vectors.adjoint());
}

Matrix hermitian_sqrt(const Matrix& a) {
  Eigensystem es = hermitian_eigensystem(a);
  const double floor = -tol::kHermitian * std::max(1.0, es.values.cwiseAbs().maxCoeff());
  Matrix scaled = es.vectors;
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    if (es.values[j] < floor) {
      throw InputError("hermitian_sqrt: input has a negative eigenvalue");
    }
    scaled.col(j) *= std::sqrt(std::max(0.0, es.values[j]));
  }
  return hermitize(scaled * es.vectors.adjoint());
}

}  // namespace qestkit
