#include "qestkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qestkit {

Weight make_weight(const RealMatrix& w) {
  if (w.rows() != w.cols() || w.rows() == 0)
    throw InputError("weight matrix must be square and nonempty");
  const double scale = std::max(1.0, w.norm());
  if ((w - RealMatrix(w.transpose())).norm() / scale > tol::kHermitian)
    throw InputError("weight matrix must be symmetric");
  Weight weight;
  weight.W = 0.5 * (w + RealMatrix(w.transpose()));
  const Eigensystem es = hermitian_eigensystem(weight.W.cast<Complex>());
  if (es.values.minCoeff() <= 1e-14 * std::max(1.0, es.values.maxCoeff()))
    throw InputError("weight matrix must be positive definite");
  weight.sqrt = hermitian_sqrt(weight.W.cast<Complex>()).real();
  return weight;
}

Weight identity_weight(int n) { return make_weight(RealMatrix::Identity(n, n)); }

double sld_cr_bound(const InfoMatrices& mats, const Weight& weight) {
  return (weight.W * mats.Ginv).trace();
}

double rld_cr_bound(const InfoMatrices& mats, const Weight& weight) {
  const double real_part = (weight.W * mats.Gtinv.real()).trace();
  const RealMatrix sandwich = weight.sqrt * mats.Gtinv.imag() * weight.sqrt;
  return real_part + trace_norm(sandwich.cast<Complex>());
}

namespace {

Matrix collection_gram(const Matrix& rho, const std::vector<Matrix>& X) {
  const int n = static_cast<int>(X.size());
  Matrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = rld_inner(rho, X[i], X[j]);
  return hermitize(h);
}

}  // namespace

double holevo_objective(const ModelPoint& point, const std::vector<Matrix>& X,
                        const Weight& weight) {
  const int n = static_cast<int>(X.size());
  if (n == 0) throw InputError("objective needs a nonempty collection");
  if (weight.W.rows() != n)
    throw InputError("weight dimension does not match the collection");
  for (const Matrix& x : X)
    if (x.rows() != point.dim() || x.cols() != point.dim())
      throw InputError("collection entries must match the state dimension");
  const Matrix h = collection_gram(point.rho(), X);
  const RealMatrix sandwich = weight.sqrt * h.imag() * weight.sqrt;
  return (weight.W * h.real()).trace() + trace_norm(sandwich.cast<Complex>());
}

Feasibility check_feasible(const ModelPoint& point, const std::vector<Matrix>& X) {
  Feasibility f;
  const int n = static_cast<int>(X.size());
  for (int i = 0; i < n; ++i)
    f.mean_residual =
        std::max(f.mean_residual, std::abs((point.rho() * X[i]).trace()));
  for (int i = 0; i < point.params(); ++i)
    for (int j = 0; j < n; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      f.score_residual = std::max(
          f.score_residual, std::abs((point.drho[i] * X[j]).trace() - target));
    }
  return f;
}

HolevoSolution holevo_bound(const ModelPoint& point, const Weight& weight,
                            const HolevoOptions& options) {
  const int n = point.params();
  if (weight.W.rows() != n)
    throw InputError("weight dimension does not match the model parameter count");

  const ScoreSet scores = compute_scores(point);
  const InfoMatrices mats = fisher_matrices(point, scores);
  const double sld_bound = sld_cr_bound(mats, weight);
  const double rld_bound = rld_cr_bound(mats, weight);
  const double lower = std::max(sld_bound, rld_bound);

  HolevoSolution sol;

  if (options.method != HolevoOptions::Method::kNumeric) {
    const ClassTest ac =
        is_asymptotically_classical(point, scores, mats, options.class_tol);
    const ClassTest di = is_d_invariant(point, scores, mats, options.class_tol);
    if (ac.verdict || di.verdict) {
      sol.value = ac.verdict ? sld_bound : rld_bound;
      sol.X = scores.sld_duals;
      sol.H = mats.Z;
      sol.method = ac.verdict ? "closed-form-sld" : "closed-form-rld";
      sol.converged = true;
      sol.gap_vs_lower = sol.value - lower;
      sol.feasibility = check_feasible(point, sol.X);
      return sol;
    }
    if (options.method == HolevoOptions::Method::kClosedForm)
      throw InputError(
          "closed form requires an asymptotically classical or D-invariant model");
  }

  // Numeric path. Admissible collections are exactly
  //   X^i = dual_i + sum_a c_ia B_a
  // with B an orthonormal basis of the orthogonal complement of
  // span{I, L_1..L_n}: the B_a have zero mean and drop out of every
  // constraint trace, and no other Hermitian direction does.
  std::vector<Matrix> spanners;
  spanners.push_back(Matrix::Identity(point.dim(), point.dim()));
  for (const Matrix& l : scores.slds) spanners.push_back(l);
  const std::vector<Matrix> basis = sld_orthonormal_complement(point.eig, spanners);
  const int m = static_cast<int>(basis.size());
  const long dof = static_cast<long>(n) * m;

  sol.method = "numeric";

  RealVector c;
  if (options.start.size() == 0) {
    c = RealVector::Zero(dof);
  } else if (options.start.size() == dof) {
    c = options.start;
  } else {
    std::ostringstream msg;
    msg << "start vector must have " << dof << " entries, got "
        << options.start.size();
    throw InputError(msg.str());
  }

  auto assemble = [&](const RealVector& coeff) {
    std::vector<Matrix> X = scores.sld_duals;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < m; ++a) X[i] += coeff[i * m + a] * basis[a];
    return X;
  };

  long evals = 0;
  double best_exact = std::numeric_limits<double>::infinity();
  RealVector best_c = c;

  struct EvalResult {
    double smoothed;
    double exact;
  };
  // One assembly and one eigendecomposition yield both the smoothed
  // objective (driving descent) and the exact one (tracked for the answer).
  auto evaluate_at = [&](const RealVector& coeff, double mu) {
    ++evals;
    const Matrix h = collection_gram(point.rho(), assemble(coeff));
    const double base = (weight.W * h.real()).trace();
    const RealMatrix sandwich = weight.sqrt * h.imag() * weight.sqrt;
    const Matrix skew = Complex(0.0, 1.0) * sandwich.cast<Complex>();
    const RealVector lam = hermitian_eigensystem(skew).values;
    EvalResult r{base, base};
    for (int k = 0; k < lam.size(); ++k) {
      r.smoothed += std::sqrt(lam[k] * lam[k] + mu * mu);
      r.exact += std::abs(lam[k]);
    }
    if (r.exact < best_exact) {
      best_exact = r.exact;
      best_c = coeff;
    }
    return r;
  };

  if (m == 0) {
    // The scores span every zero-mean direction, so the duals are the only
    // admissible collection.
    const EvalResult only = evaluate_at(c, 0.0);
    sol.converged = true;
    sol.stage_values.push_back(only.exact);
  } else {
    const double kGradTol = 1e-7;
    const double kArmijo = 1e-4;
    const double kTinyDrop = 1e-13;
    const double kFdStep = 1e-6;
    const int kStages = 9;

    bool exhausted = false;
    double mu = 1e-2;
    for (int stage = 0; stage < kStages && !exhausted; ++stage, mu *= 0.1) {
      EvalResult cur = evaluate_at(c, mu);
      while (true) {
        if (evals + 2 * dof + 1 > options.budget) {
          exhausted = true;
          break;
        }
        RealVector g(dof);
        for (long k = 0; k < dof; ++k) {
          RealVector up = c, dn = c;
          up[k] += kFdStep;
          dn[k] -= kFdStep;
          g[k] = (evaluate_at(up, mu).smoothed - evaluate_at(dn, mu).smoothed) /
                 (2.0 * kFdStep);
        }
        const double gnorm = g.norm();
        if (gnorm < kGradTol * (1.0 + std::abs(cur.smoothed))) break;

        const double gsq = g.squaredNorm();
        double alpha = 1.0;
        bool accepted = false, tiny = false;
        while (alpha >= 1e-16) {
          if (evals + 1 > options.budget) {
            exhausted = true;
            break;
          }
          const RealVector trial = c - alpha * g;
          const EvalResult t = evaluate_at(trial, mu);
          if (t.smoothed <= cur.smoothed - kArmijo * alpha * gsq) {
            tiny = cur.smoothed - t.smoothed <
                   kTinyDrop * (1.0 + std::abs(t.smoothed));
            c = trial;
            cur = t;
            accepted = true;
            break;
          }
          alpha *= 0.5;
        }
        if (exhausted || !accepted || tiny) break;
      }
      sol.stage_values.push_back(cur.exact);
      ++sol.stages;
    }
    sol.converged = !exhausted;
  }

  sol.value = best_exact;
  sol.X = assemble(best_c);
  sol.H = collection_gram(point.rho(), sol.X);
  sol.evaluations = evals;
  sol.gap_vs_lower = sol.value - lower;
  sol.feasibility = check_feasible(point, sol.X);
  return sol;
}

}  // namespace qestkit
