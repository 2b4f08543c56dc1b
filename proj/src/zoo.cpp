#include <cmath>
#include <sstream>

#include "qestkit/model.hpp"

namespace qestkit {

namespace {

double setting(const std::map<std::string, double>& settings,
               const std::map<std::string, double>& defaults, const std::string& key) {
  auto it = settings.find(key);
  if (it != settings.end()) return it->second;
  return defaults.at(key);
}

void reject_unknown(const std::string& name,
                    const std::map<std::string, double>& settings,
                    const std::map<std::string, double>& defaults) {
  for (const auto& [key, value] : settings) {
    (void)value;
    if (defaults.find(key) == defaults.end()) {
      throw InputError("zoo_model: '" + name + "' has no setting '" + key + "'");
    }
  }
}

// classical-diagonal: diagonal states on an affine curve through the
// uniform distribution, p(theta) = 1/d + sum_i theta^i (e_i - e_{i+1}).
// All states commute, so every classification holds everywhere.
ParametricModel classical_diagonal(const std::map<std::string, double>& settings) {
  static const std::map<std::string, double> defaults{{"d", 3.0}, {"n", 2.0}};
  reject_unknown("classical-diagonal", settings, defaults);
  const int d = static_cast<int>(std::lround(setting(settings, defaults, "d")));
  const int n = static_cast<int>(std::lround(setting(settings, defaults, "n")));
  if (d < 2) throw InputError("classical-diagonal: d must be at least 2");
  if (n < 1 || n > d - 1) {
    throw InputError("classical-diagonal: n must lie in [1, d-1]");
  }

  auto eigenvalues = [d, n](const RealVector& theta) {
    RealVector p = RealVector::Constant(d, 1.0 / d);
    for (int i = 0; i < n; ++i) {
      p[i] += theta[i];
      p[i + 1] -= theta[i];
    }
    return p;
  };

  ParametricModel model;
  model.kind = ParametricModel::Kind::kBuiltin;
  model.name = "classical-diagonal";
  model.dim = d;
  model.nparams = n;
  model.settings = {{"d", static_cast<double>(d)}, {"n", static_cast<double>(n)}};
  model.summary =
      "Commuting family of diagonal full-rank states; the eigenvalue vector "
      "moves on an affine curve through the uniform distribution, so the "
      "model is classical everywhere on its domain.";
  model.domain = [eigenvalues, d](const RealVector& theta) {
    const RealVector p = eigenvalues(theta);
    if (p.minCoeff() <= 2.0 * tol::kFullRank) {
      std::ostringstream msg;
      msg << "classical-diagonal: theta leaves the simplex interior "
          << "(minimum eigenvalue " << p.minCoeff() << " across " << d << " levels)";
      throw InputError(msg.str());
    }
  };
  model.state = [eigenvalues, d](const RealVector& theta) {
    Matrix rho = Matrix::Zero(d, d);
    const RealVector p = eigenvalues(theta);
    for (int j = 0; j < d; ++j) rho(j, j) = p[j];
    return rho;
  };
  model.derivatives = [d, n](const RealVector&) {
    std::vector<Matrix> drho;
    for (int i = 0; i < n; ++i) {
      Matrix m = Matrix::Zero(d, d);
      m(i, i) = 1.0;
      m(i + 1, i + 1) = -1.0;
      drho.push_back(m);
    }
    return drho;
  };
  return model;
}

ParametricModel qubit_full(const std::map<std::string, double>& settings) {
  reject_unknown("qubit-full", settings, {});
  BlochMap bm;
  bm.s = [](const RealVector& theta) {
    return Eigen::Vector3d(theta[0], theta[1], theta[2]);
  };
  bm.jacobian = [](const RealVector&) {
    return Eigen::Matrix3Xd(Eigen::Matrix3d::Identity());
  };
  ParametricModel model = make_bloch_model("qubit-full", 3, std::move(bm));
  model.summary =
      "Full qubit tomography family, Bloch vector s = theta on the open "
      "unit ball; |s| varies and all three rotation directions are present, "
      "so no classification holds away from the center.";
  model.domain = [](const RealVector& theta) {
    if (theta.norm() >= 1.0 - 2.0 * tol::kFullRank) {
      throw InputError("qubit-full: |theta| must stay below 1");
    }
  };
  return model;
}

ParametricModel qubit_equatorial(const std::map<std::string, double>& settings) {
  reject_unknown("qubit-equatorial", settings, {});
  BlochMap bm;
  bm.s = [](const RealVector& theta) {
    return Eigen::Vector3d(theta[0], theta[1], 0.0);
  };
  bm.jacobian = [](const RealVector&) {
    Eigen::Matrix3Xd jac(3, 2);
    jac.setZero();
    jac(0, 0) = 1.0;
    jac(1, 1) = 1.0;
    return jac;
  };
  ParametricModel model = make_bloch_model("qubit-equatorial", 2, std::move(bm));
  model.summary =
      "Planar qubit family, s = (theta1, theta2, 0): the Bloch vector and "
      "both tangents are coplanar, so the model is asymptotically classical "
      "but neither classical nor D-invariant away from the center.";
  model.domain = [](const RealVector& theta) {
    if (theta.norm() >= 1.0 - 2.0 * tol::kFullRank) {
      throw InputError("qubit-equatorial: |theta| must stay below 1");
    }
  };
  return model;
}

ParametricModel qubit_fixed_radius(const std::map<std::string, double>& settings) {
  static const std::map<std::string, double> defaults{{"s0", 0.8}};
  reject_unknown("qubit-fixed-radius", settings, defaults);
  const double s0 = setting(settings, defaults, "s0");
  if (s0 <= 0.0 || s0 >= 1.0) {
    throw InputError("qubit-fixed-radius: s0 must lie in (0, 1)");
  }

  BlochMap bm;
  bm.s = [s0](const RealVector& theta) {
    const double s3 = std::sqrt(s0 * s0 - theta[0] * theta[0] - theta[1] * theta[1]);
    return Eigen::Vector3d(theta[0], theta[1], s3);
  };
  bm.jacobian = [s0](const RealVector& theta) {
    const double s3 = std::sqrt(s0 * s0 - theta[0] * theta[0] - theta[1] * theta[1]);
    Eigen::Matrix3Xd jac(3, 2);
    jac << 1.0, 0.0, 0.0, 1.0, -theta[0] / s3, -theta[1] / s3;
    return jac;
  };
  ParametricModel model = make_bloch_model("qubit-fixed-radius", 2, std::move(bm));
  model.settings = {{"s0", s0}};
  model.summary =
      "Qubit family confined to the sphere |s| = s0 (upper hemisphere "
      "chart): purity never changes, which makes the model D-invariant "
      "everywhere, while the curvature term keeps it away from asymptotic "
      "classicality.";
  model.domain = [s0](const RealVector& theta) {
    const double r2 = theta[0] * theta[0] + theta[1] * theta[1];
    // Keep a margin so the hemisphere chart's Jacobian stays finite.
    if (r2 >= s0 * s0 * (1.0 - 1e-8)) {
      throw InputError("qubit-fixed-radius: theta must stay inside the chart "
                       "disc of radius s0");
    }
  };
  return model;
}

// qutrit-qc: Lambda(theta1) = diag(l, c*l, 1-(1+c)*l) with l = theta1,
// conjugated by U(theta2) = exp(i*theta2*K) where K is the symmetric
// permutation generator of the upper 2x2 block. The two scores commute
// (the rotating block sees equal diagonal entries of the first score),
// but the rotation makes the family genuinely quantum.
ParametricModel qutrit_qc(const std::map<std::string, double>& settings) {
  static const std::map<std::string, double> defaults{{"c", 2.0}};
  reject_unknown("qutrit-qc", settings, defaults);
  const double c = setting(settings, defaults, "c");
  if (c <= 0.0 || std::abs(c - 1.0) < 1e-12) {
    throw InputError("qutrit-qc: c must be positive and distinct from 1");
  }

  static const Matrix kGen = [] {
    Matrix k = Matrix::Zero(3, 3);
    k(0, 1) = k(1, 0) = 1.0;
    return k;
  }();
  // exp(i phi K) in closed form: K^2 projects on the rotating block,
  // K^3 = K.
  auto rotation = [](double phi) {
    Matrix u = Matrix::Identity(3, 3);
    u(0, 0) = u(1, 1) = std::cos(phi);
    u(0, 1) = u(1, 0) = Complex(0.0, std::sin(phi));
    return u;
  };

  ParametricModel model;
  model.kind = ParametricModel::Kind::kBuiltin;
  model.name = "qutrit-qc";
  model.dim = 3;
  model.nparams = 2;
  model.settings = {{"c", c}};
  model.summary =
      "Two-parameter qutrit family: eigenvalues (l, c*l, 1-(1+c)*l) with "
      "l = theta1, rotated by exp(i*theta2*K) with K swapping the first two "
      "levels. Scores commute (quasi-classical) yet the family is not "
      "classical; it is asymptotically classical but not D-invariant.";
  model.domain = [c](const RealVector& theta) {
    const double l = theta[0];
    if (l <= 2.0 * tol::kFullRank || 1.0 - (1.0 + c) * l <= 2.0 * tol::kFullRank) {
      std::ostringstream msg;
      msg << "qutrit-qc: theta1 must satisfy 0 < theta1 < " << 1.0 / (1.0 + c);
      throw InputError(msg.str());
    }
  };
  model.state = [c, rotation](const RealVector& theta) {
    const double l = theta[0];
    Matrix lam = Matrix::Zero(3, 3);
    lam(0, 0) = l;
    lam(1, 1) = c * l;
    lam(2, 2) = 1.0 - (1.0 + c) * l;
    const Matrix u = rotation(theta[1]);
    return hermitize(u * lam * u.adjoint());
  };
  model.derivatives = [c, rotation](const RealVector& theta) {
    const Matrix u = rotation(theta[1]);
    Matrix dlam = Matrix::Zero(3, 3);
    dlam(0, 0) = 1.0;
    dlam(1, 1) = c;
    dlam(2, 2) = -(1.0 + c);
    Matrix d1 = hermitize(u * dlam * u.adjoint());

    const double l = theta[0];
    Matrix lam = Matrix::Zero(3, 3);
    lam(0, 0) = l;
    lam(1, 1) = c * l;
    lam(2, 2) = 1.0 - (1.0 + c) * l;
    const Matrix rho = u * lam * u.adjoint();
    Matrix d2 = hermitize(Complex(0.0, 1.0) * (kGen * rho - rho * kGen));
    return std::vector<Matrix>{d1, d2};
  };
  return model;
}

}  // namespace

const std::vector<ZooEntry>& zoo_catalog() {
  static const std::vector<ZooEntry> catalog = [] {
    std::vector<ZooEntry> entries;
    entries.push_back({"classical-diagonal",
                       classical_diagonal({}).summary, 3, 2,
                       {{"d", 3.0}, {"n", 2.0}}});
    entries.push_back({"qubit-full", qubit_full({}).summary, 2, 3, {}});
    entries.push_back({"qubit-equatorial", qubit_equatorial({}).summary, 2, 2, {}});
    entries.push_back({"qubit-fixed-radius", qubit_fixed_radius({}).summary, 2, 2,
                       {{"s0", 0.8}}});
    entries.push_back({"qutrit-qc", qutrit_qc({}).summary, 3, 2, {{"c", 2.0}}});
    return entries;
  }();
  return catalog;
}

ParametricModel zoo_model(const std::string& name,
                          const std::map<std::string, double>& settings) {
  if (name == "classical-diagonal") return classical_diagonal(settings);
  if (name == "qubit-full") return qubit_full(settings);
  if (name == "qubit-equatorial") return qubit_equatorial(settings);
  if (name == "qubit-fixed-radius") return qubit_fixed_radius(settings);
  if (name == "qutrit-qc") return qutrit_qc(settings);
  throw InputError("zoo_model: unknown model '" + name +
                   "'; see the catalog for available names");
}

}  // namespace qestkit
