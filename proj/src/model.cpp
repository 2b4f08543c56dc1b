#include "qestkit/model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace qestkit {

namespace {

RealMatrix hs_gram(const std::vector<Matrix>& ops) {
  const int n = static_cast<int>(ops.size());
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = (ops[i].adjoint() * ops[j]).trace().real();
  return g;
}

}  // namespace

RegularityReport validate_regularity(const Matrix& rho, const std::vector<Matrix>& drho) {
  RegularityReport report;
  auto add = [&](const std::string& name, double residual, bool pass) {
    report.items.push_back({name, residual, pass});
  };

  const bool square = rho.rows() == rho.cols() && rho.rows() > 0;
  add("state_square", square ? 0.0 : 1.0, square);
  if (!square) {
    report.pass = false;
    return report;
  }

  const double herm = (rho - Matrix(rho.adjoint())).norm() / std::max(1.0, rho.norm());
  add("state_hermitian", herm, herm <= tol::kHermitian);

  const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  add("state_unit_trace", tr_err, tr_err <= tol::kUnitTrace);

  double min_eig = 0.0;
  bool full_rank = false;
  if (herm <= tol::kHermitian) {
    min_eig = hermitian_eigensystem(hermitize(rho)).values.minCoeff();
    full_rank = min_eig > tol::kFullRank;
  }
  add("state_full_rank", min_eig, full_rank);

  bool tangent_ok = true;
  for (size_t i = 0; i < drho.size(); ++i) {
    const bool dims = drho[i].rows() == rho.rows() && drho[i].cols() == rho.cols();
    const double dh = dims ? (drho[i] - Matrix(drho[i].adjoint())).norm() /
                                 std::max(1.0, drho[i].norm())
                           : 1.0;
    const double dt = dims ? std::abs(drho[i].trace()) / std::max(1.0, drho[i].norm())
                           : 1.0;
    add("drho" + std::to_string(i) + "_hermitian", dh, dims && dh <= tol::kHermitian);
    add("drho" + std::to_string(i) + "_traceless", dt, dims && dt <= tol::kTraceless);
    tangent_ok = tangent_ok && dims && dh <= tol::kHermitian && dt <= tol::kTraceless;
  }

  if (!drho.empty() && tangent_ok) {
    const double gram_min =
        hermitian_eigensystem(hs_gram(drho).cast<Complex>()).values.minCoeff();
    add("drho_independent", gram_min, gram_min > tol::kGram);
  } else if (!drho.empty()) {
    add("drho_independent", 0.0, false);
  }

  report.pass = true;
  for (const auto& item : report.items) report.pass = report.pass && item.pass;
  return report;
}

ModelPoint make_model_point(const RealVector& theta, const Matrix& rho,
                            const std::vector<Matrix>& drho) {
  if (drho.empty()) throw InputError("make_model_point: no derivatives given");

  // state_eigensystem covers the state conditions with precise messages;
  // the remaining conditions are checked here.
  ModelPoint point;
  point.theta = theta;
  point.eig = state_eigensystem(rho);
  for (size_t i = 0; i < drho.size(); ++i) {
    if (drho[i].rows() != rho.rows() || drho[i].cols() != rho.cols()) {
      throw InputError("make_model_point: drho " + std::to_string(i) +
                       " has wrong dimensions");
    }
    if (!is_hermitian(drho[i])) {
      throw InputError("make_model_point: drho " + std::to_string(i) +
                       " is not Hermitian");
    }
    if (std::abs(drho[i].trace()) > tol::kTraceless * std::max(1.0, drho[i].norm())) {
      throw InputError("make_model_point: drho " + std::to_string(i) +
                       " is not traceless");
    }
    point.drho.push_back(hermitize(drho[i]));
  }

  const double gram_min =
      hermitian_eigensystem(hs_gram(point.drho).cast<Complex>()).values.minCoeff();
  if (gram_min <= tol::kGram) {
    std::ostringstream msg;
    msg << "make_model_point: derivatives are linearly dependent "
        << "(Gram minimum eigenvalue " << gram_min << ")";
    throw RegularityError(msg.str());
  }
  return point;
}

Matrix bloch_to_state(const Eigen::Vector3d& s) {
  const double r = s.norm();
  if (r >= 1.0 - 2.0 * tol::kFullRank) {
    std::ostringstream msg;
    msg << "bloch_to_state: |s| = " << r << " leaves no spectral margin";
    throw RegularityError(msg.str());
  }
  Matrix rho(2, 2);
  rho(0, 0) = Complex(0.5 * (1.0 + s[2]), 0.0);
  rho(1, 1) = Complex(0.5 * (1.0 - s[2]), 0.0);
  rho(0, 1) = Complex(0.5 * s[0], -0.5 * s[1]);
  rho(1, 0) = Complex(0.5 * s[0], 0.5 * s[1]);
  return rho;
}

Eigen::Vector3d state_to_bloch(const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw InputError("state_to_bloch: expected a 2x2 state");
  }
  if (!is_hermitian(rho) ||
      std::abs(rho.trace() - Complex(1.0, 0.0)) > tol::kUnitTrace) {
    throw InputError("state_to_bloch: input is not a density matrix");
  }
  Eigen::Vector3d s;
  s[0] = 2.0 * rho(1, 0).real();
  s[1] = 2.0 * rho(1, 0).imag();
  s[2] = (rho(0, 0) - rho(1, 1)).real();
  return s;
}

namespace {

const Matrix& pauli(int i) {
  static const Matrix sx = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix sy =
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Matrix sz = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  switch (i) {
    case 0: return sx;
    case 1: return sy;
    default: return sz;
  }
}

std::vector<Matrix> bloch_derivatives(const Eigen::Matrix3Xd& jac) {
  std::vector<Matrix> drho;
  for (Eigen::Index i = 0; i < jac.cols(); ++i) {
    Matrix d = Matrix::Zero(2, 2);
    for (int a = 0; a < 3; ++a) d += 0.5 * jac(a, i) * pauli(a);
    drho.push_back(hermitize(d));
  }
  return drho;
}

void check_theta_size(const ParametricModel& model, const RealVector& theta) {
  if (static_cast<int>(theta.size()) != model.nparams) {
    std::ostringstream msg;
    msg << "evaluate: model '" << model.name << "' takes " << model.nparams
        << " parameters, got " << theta.size();
    throw InputError(msg.str());
  }
}

}  // namespace

ModelPoint evaluate(const ParametricModel& model, const RealVector& theta,
                    double fd_step) {
  check_theta_size(model, theta);
  if (fd_step <= 0.0) throw InputError("evaluate: fd_step must be positive");
  if (model.domain) model.domain(theta);

  switch (model.kind) {
    case ParametricModel::Kind::kExplicit: {
      for (const ExplicitPoint& pt : model.points) {
        if ((pt.theta - theta).lpNorm<Eigen::Infinity>() <= 1e-12) {
          return make_model_point(theta, pt.rho, pt.drho);
        }
      }
      throw InputError("evaluate: theta is not one of the model's stored points");
    }
    case ParametricModel::Kind::kBloch: {
      const BlochMap& bm = *model.bloch;
      Eigen::Matrix3Xd jac;
      if (bm.jacobian) {
        jac = bm.jacobian(theta);
      } else {
        jac.resize(3, theta.size());
        for (Eigen::Index i = 0; i < theta.size(); ++i) {
          RealVector up = theta, dn = theta;
          up[i] += fd_step;
          dn[i] -= fd_step;
          jac.col(i) = (bm.s(up) - bm.s(dn)) / (2.0 * fd_step);
        }
      }
      return make_model_point(theta, bloch_to_state(bm.s(theta)),
                              bloch_derivatives(jac));
    }
    case ParametricModel::Kind::kBuiltin:
    default: {
      Matrix rho = model.state(theta);
      std::vector<Matrix> drho;
      if (model.derivatives) {
        drho = model.derivatives(theta);
      } else {
        for (Eigen::Index i = 0; i < theta.size(); ++i) {
          RealVector up = theta, dn = theta;
          up[i] += fd_step;
          dn[i] -= fd_step;
          drho.push_back(hermitize((model.state(up) - model.state(dn)) /
                                   (2.0 * fd_step)));
        }
      }
      return make_model_point(theta, rho, drho);
    }
  }
}

ParametricModel make_bloch_model(std::string name, int nparams, BlochMap map) {
  if (nparams < 1 || nparams > 3) {
    throw InputError("make_bloch_model: a qubit family takes 1 to 3 parameters");
  }
  ParametricModel model;
  model.kind = ParametricModel::Kind::kBloch;
  model.name = std::move(name);
  model.dim = 2;
  model.nparams = nparams;
  model.bloch = std::move(map);
  model.summary = "qubit family given by a Bloch-vector map";
  return model;
}

ParametricModel make_explicit_model(std::string name, int dim,
                                    std::vector<ExplicitPoint> points) {
  if (points.empty()) throw InputError("make_explicit_model: no points given");
  const int n = static_cast<int>(points.front().drho.size());
  for (const ExplicitPoint& pt : points) {
    if (pt.rho.rows() != dim || pt.rho.cols() != dim) {
      throw InputError("make_explicit_model: point dimension mismatch");
    }
    if (static_cast<int>(pt.drho.size()) != n) {
      throw InputError("make_explicit_model: inconsistent parameter count");
    }
  }
  ParametricModel model;
  model.kind = ParametricModel::Kind::kExplicit;
  model.name = std::move(name);
  model.dim = dim;
  model.nparams = n;
  model.points = std::move(points);
  model.summary = "tabulated model with precomputed states and derivatives";
  return model;
}

ModelPoint random_model_point(Rng& rng, int dim, int nparams, int attempts) {
  if (dim < 2) throw InputError("random_model_point: dim must be at least 2");
  if (nparams < 1 || nparams > dim * dim - 1) {
    throw InputError("random_model_point: nparams must lie in [1, dim^2 - 1]");
  }
  // Reject direction sets whose correlation Gram has a small eigenvalue:
  // they are still regular, but the near-singular Fisher matrices amplify
  // roundoff in the dual-score identities far beyond testing tolerances.
  const double min_gram_eig = 0.05;
  for (int attempt = 0;; ++attempt) {
    try {
      const RealVector p = rng.spectrum(dim);
      const Matrix u = rng.unitary(dim);
      const Matrix rho = hermitize(u * p.asDiagonal() * u.adjoint());
      std::vector<Matrix> drho;
      for (int i = 0; i < nparams; ++i) drho.push_back(rng.traceless_hermitian(dim));
      if (nparams > 1) {
        Matrix corr(nparams, nparams);
        for (int i = 0; i < nparams; ++i)
          for (int j = 0; j < nparams; ++j)
            corr(i, j) = (drho[i].adjoint() * drho[j]).trace() /
                         (frobenius(drho[i]) * frobenius(drho[j]));
        if (hermitian_eigensystem(corr).values.minCoeff() < min_gram_eig)
          throw RegularityError("random_model_point: ill-conditioned directions");
      }
      return make_model_point(RealVector::Zero(nparams), rho, drho);
    } catch (const RegularityError&) {
      if (attempt + 1 >= attempts) throw;
    }
  }
}

}  // namespace qestkit
