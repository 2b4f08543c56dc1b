#include "qestkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qestkit {

namespace {

bool in_marginal_band(double residual, double tolerance) {
  return residual >= 0.5 * tolerance && residual <= 2.0 * tolerance;
}

void finish(ClassTest& test, double residual, double tolerance) {
  test.residual = residual;
  test.verdict = residual < tolerance;
  test.marginal = in_marginal_band(residual, tolerance);
}

std::string theta_string(const RealVector& theta) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < theta.size(); ++i) {
    if (i > 0) os << ", ";
    os << theta[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

ClassTest is_classical(const ModelPoint& point, const ScoreSet& scores,
                       const InfoMatrices& mats, double tolerance) {
  ClassTest test;
  finish(test, rel_residual(mats.G.cast<Complex>(), mats.Gt), tolerance);

  const int n = point.params();
  double state_comm = 0.0, score_diff = 0.0, superop_kill = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix& l = scores.slds[i];
    const double scale = std::max(1.0, l.norm());
    state_comm = std::max(state_comm, (l * point.rho() - point.rho() * l).norm() / scale);
    score_diff = std::max(score_diff, (l - scores.rlds[i]).norm() / scale);
    superop_kill =
        std::max(superop_kill, commutation_superop(point.eig, l).norm() / scale);
  }
  test.details["state_commutator"] = state_comm;
  test.details["score_difference"] = score_diff;
  test.details["superop_annihilates"] = superop_kill;
  test.details["gtinv_vs_zt"] = rel_residual(mats.Gtinv, mats.Zt);
  test.details["z_vs_zt"] = rel_residual(mats.Z, mats.Zt);
  return test;
}

ClassTest is_quasi_classical(const ModelPoint& point, const ScoreSet& scores,
                             double tolerance) {
  ClassTest test;
  const int n = point.params();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Matrix& a = scores.slds[i];
      const Matrix& b = scores.slds[j];
      const double r = (a * b - b * a).norm() / std::max(1.0, a.norm() * b.norm());
      std::ostringstream key;
      key << "commutator_" << (i + 1) << "_" << (j + 1);
      test.details[key.str()] = r;
      worst = std::max(worst, r);
    }
  }
  finish(test, worst, tolerance);
  return test;
}

ClassTest is_d_invariant(const ModelPoint& point, const ScoreSet& scores,
                         const InfoMatrices& mats, double tolerance) {
  ClassTest test;
  finish(test, rel_residual(mats.Z, mats.Gtinv), tolerance);

  const int n = point.params();
  const RealMatrix im_z = mats.Z.imag();
  double dual_diff = 0.0, closure = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix& dual = scores.sld_duals[i];
    const double scale = std::max(1.0, dual.norm());
    dual_diff = std::max(dual_diff, (dual - scores.rld_duals[i]).norm() / scale);
    Matrix image = commutation_superop(point.eig, dual);
    for (int j = 0; j < n; ++j) image -= im_z(j, i) * scores.slds[j];
    closure = std::max(closure, image.norm() / scale);
  }
  test.details["dual_difference"] = dual_diff;
  test.details["superop_closure"] = closure;
  test.details["ginv_vs_zt"] = rel_residual(mats.Ginv.cast<Complex>(), mats.Zt);
  return test;
}

ClassTest is_asymptotically_classical(const ModelPoint& point, const ScoreSet& scores,
                                      const InfoMatrices& mats, double tolerance) {
  ClassTest test;
  finish(test, mats.Z.imag().norm() / std::max(1.0, mats.Z.norm()), tolerance);

  const int n = point.params();
  double mean_comm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Matrix& a = scores.sld_duals[i];
      const Matrix& b = scores.sld_duals[j];
      const double r = 0.5 * std::abs((point.rho() * (a * b - b * a)).trace()) /
                       std::max(1.0, a.norm() * b.norm());
      mean_comm = std::max(mean_comm, r);
    }
  }
  test.details["mean_commutator"] = mean_comm;
  return test;
}

ClassificationReport classify_point(const ModelPoint& point,
                                    const ToleranceConfig& config) {
  const ScoreSet scores = compute_scores(point);
  const InfoMatrices mats = fisher_matrices(point, scores);

  ClassificationReport report;
  report.classical = is_classical(point, scores, mats, config.tol);
  report.quasi_classical = is_quasi_classical(point, scores, config.tol);
  report.d_invariant = is_d_invariant(point, scores, mats, config.tol);
  report.asymptotically_classical =
      is_asymptotically_classical(point, scores, mats, config.tol);

  const bool cl = report.classical.verdict;
  const bool qc = report.quasi_classical.verdict;
  const bool di = report.d_invariant.verdict;
  const bool ac = report.asymptotically_classical.verdict;
  if (cl && !qc)
    report.notes.push_back(
        "classical verdict without quasi-classical; residuals straddle the tolerance "
        "or the point is degenerate");
  if (qc && !ac)
    report.notes.push_back(
        "quasi-classical verdict without asymptotically classical; residuals straddle "
        "the tolerance or the point is degenerate");
  if (cl != (di && ac))
    report.notes.push_back(
        "classical verdict disagrees with (D-invariant and asymptotically classical)");
  report.consistent = report.notes.empty();
  return report;
}

GlobalReport classify_global(const ParametricModel& model,
                             const std::vector<RealVector>& grid,
                             const ToleranceConfig& config) {
  if (grid.empty()) throw InputError("classification grid is empty");

  GlobalReport global;
  global.classical = global.quasi_classical = true;
  global.d_invariant = global.asymptotically_classical = true;

  for (const RealVector& theta : grid) {
    ModelPoint point = [&] {
      try {
        return evaluate(model, theta);
      } catch (const RegularityError& err) {
        throw RegularityError(std::string(err.what()) + " at theta = " +
                              theta_string(theta));
      }
    }();
    GlobalReport::PointResult result;
    result.theta = theta;
    result.report = classify_point(point, config);
    if (!result.report.classical.verdict) {
      global.classical = false;
      global.failing_classical.push_back(theta);
    }
    if (!result.report.quasi_classical.verdict) {
      global.quasi_classical = false;
      global.failing_quasi_classical.push_back(theta);
    }
    if (!result.report.d_invariant.verdict) {
      global.d_invariant = false;
      global.failing_d_invariant.push_back(theta);
    }
    if (!result.report.asymptotically_classical.verdict) {
      global.asymptotically_classical = false;
      global.failing_asymptotically_classical.push_back(theta);
    }
    global.points.push_back(std::move(result));
  }
  return global;
}

BlochReport bloch_classify(const ParametricModel& model,
                           const std::vector<RealVector>& grid,
                           const ToleranceConfig& config) {
  if (!model.bloch || model.dim != 2)
    throw InputError("Bloch classification needs a qubit model with a Bloch map");
  if (grid.empty()) throw InputError("classification grid is empty");

  const BlochMap& bm = *model.bloch;
  const double fd_step = 1e-5;

  BlochReport report;
  report.classical = report.quasi_classical = true;
  report.d_invariant = report.asymptotically_classical = true;
  report.agrees = true;
  double rmin = 2.0, rmax = 0.0;

  for (const RealVector& theta : grid) {
    const ModelPoint point = evaluate(model, theta);
    const ClassificationReport general = classify_point(point, config);

    BlochReport::PointResult pr;
    pr.theta = theta;
    pr.s = bm.s(theta);
    pr.radius = pr.s.norm();
    rmin = std::min(rmin, pr.radius);
    rmax = std::max(rmax, pr.radius);

    const int n = static_cast<int>(theta.size());
    Eigen::Matrix3Xd jac;
    if (bm.jacobian) {
      jac = bm.jacobian(theta);
    } else {
      jac.resize(3, n);
      for (int i = 0; i < n; ++i) {
        RealVector up = theta, dn = theta;
        up[i] += fd_step;
        dn[i] -= fd_step;
        jac.col(i) = (bm.s(up) - bm.s(dn)) / (2.0 * fd_step);
      }
    }

    double radial = 0.0, volume = 0.0, cross = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector3d ti = jac.col(i);
      radial = std::max(radial,
                        std::abs(pr.s.dot(ti)) / std::max(1.0, pr.radius * ti.norm()));
      for (int j = i + 1; j < n; ++j) {
        const Eigen::Vector3d tj = jac.col(j);
        const Eigen::Vector3d cx = ti.cross(tj);
        const double pair_scale = std::max(1.0, ti.norm() * tj.norm());
        cross = std::max(cross, cx.norm() / pair_scale);
        volume = std::max(volume, std::abs(pr.s.dot(cx)) /
                                      std::max(1.0, pr.radius * ti.norm() * tj.norm()));
      }
    }
    pr.radial_residual = radial;
    pr.volume_residual = volume;
    pr.cross_residual = cross;

    // D-invariance criterion by parameter count. The SLD tangent vectors are
    // the images of the Jacobian columns under the invertible map
    // (I - s s^T)^{-1}, and the superoperator acts on Bloch vectors as
    // x -> s x x. For n = 3 the tangent span is all of R^3, so invariance is
    // automatic; for n = 2 the span is a plane and invariance reduces to the
    // radial criterion s . d_i s = 0; for n = 1 it reduces to s x d_1 s = 0.
    double dinv_residual = 0.0;
    if (n == 2) {
      dinv_residual = radial;
    } else if (n == 1) {
      const Eigen::Vector3d t0 = jac.col(0);
      dinv_residual =
          pr.s.cross(t0).norm() / std::max(1.0, pr.radius * t0.norm());
    }
    pr.d_invariant = dinv_residual < config.tol;
    pr.asymptotically_classical = volume < config.tol;
    pr.quasi_classical = cross < config.tol;
    pr.classical = pr.d_invariant && pr.asymptotically_classical;
    pr.agrees = pr.classical == general.classical.verdict &&
                pr.quasi_classical == general.quasi_classical.verdict &&
                pr.d_invariant == general.d_invariant.verdict &&
                pr.asymptotically_classical == general.asymptotically_classical.verdict;

    report.classical &= pr.classical;
    report.quasi_classical &= pr.quasi_classical;
    report.d_invariant &= pr.d_invariant;
    report.asymptotically_classical &= pr.asymptotically_classical;
    report.agrees &= pr.agrees;
    report.points.push_back(std::move(pr));
  }
  report.radius_spread = rmax - rmin;
  return report;
}

}  // namespace qestkit
