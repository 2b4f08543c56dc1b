#pragma once

#include <map>
#include <string>
#include <vector>

#include "qestkit/infogeo.hpp"
#include "qestkit/model.hpp"

namespace qestkit {

struct ToleranceConfig {
  double tol = tol::kClassify;
};

// Outcome of one class membership test. The verdict comes from the primary
// residual alone; `details` holds the named cross-checks implied by the
// equivalent characterizations, for diagnostics. `marginal` is set when
// the primary residual lands within a factor of two of the tolerance on
// either side, i.e. the verdict should not be trusted blindly.
struct ClassTest {
  bool verdict = false;
  bool marginal = false;
  double residual = 0.0;
  std::map<std::string, double> details;
};

// classical: SLD and RLD metrics coincide, G = Gt.
ClassTest is_classical(const ModelPoint& point, const ScoreSet& scores,
                       const InfoMatrices& mats, double tolerance = tol::kClassify);

// quasi-classical: all SLD commutators [L_i, L_j] vanish.
ClassTest is_quasi_classical(const ModelPoint& point, const ScoreSet& scores,
                             double tolerance = tol::kClassify);

// D-invariant: Z = Gt^{-1}; the commutation superoperator maps the SLD
// tangent space into itself.
ClassTest is_d_invariant(const ModelPoint& point, const ScoreSet& scores,
                         const InfoMatrices& mats, double tolerance = tol::kClassify);

// asymptotically classical: Im Z = 0.
ClassTest is_asymptotically_classical(const ModelPoint& point, const ScoreSet& scores,
                                      const InfoMatrices& mats,
                                      double tolerance = tol::kClassify);

// All four tests plus the containment structure between them:
// classical <=> (D-invariant and asymptotically classical),
// classical => quasi-classical => asymptotically classical.
// Verdict combinations that break these are flagged, not repaired: they
// can only arise from residuals straddling the tolerance or from
// degenerate points, and the notes say which implication failed.
struct ClassificationReport {
  ClassTest classical;
  ClassTest quasi_classical;
  ClassTest d_invariant;
  ClassTest asymptotically_classical;
  bool consistent = true;
  std::vector<std::string> notes;
};

ClassificationReport classify_point(const ModelPoint& point,
                                    const ToleranceConfig& config = {});

// Model-level classification over a parameter grid: the global verdict for
// each class is the conjunction over grid points (a sampling approximation
// to the family-level property). Any irregular grid point aborts with a
// RegularityError naming the offending theta.
struct GlobalReport {
  struct PointResult {
    RealVector theta;
    ClassificationReport report;
  };
  std::vector<PointResult> points;
  bool classical = false;
  bool quasi_classical = false;
  bool d_invariant = false;
  bool asymptotically_classical = false;
  std::vector<RealVector> failing_classical;
  std::vector<RealVector> failing_quasi_classical;
  std::vector<RealVector> failing_d_invariant;
  std::vector<RealVector> failing_asymptotically_classical;
};

GlobalReport classify_global(const ParametricModel& model,
                             const std::vector<RealVector>& grid,
                             const ToleranceConfig& config = {});

// Qubit-only classification through Bloch geometry, plus an agreement
// check against classify_point at every grid point. Criteria per point:
//   D-invariant:    n=2: s . d_i s = 0 for all i (|s| stationary);
//                   n=1: s x d_1 s = 0; n=3: automatic (full tangent span)
//   asymptotically classical: s . (d_i s x d_j s) = 0      (coplanarity)
//   quasi-classical:          d_i s x d_j s = 0            (parallel tangents)
//   classical:                D-invariant and asymptotically classical
struct BlochReport {
  struct PointResult {
    RealVector theta;
    Eigen::Vector3d s;
    double radius;
    double radial_residual;  // max_i |s . d_i s|, normalized
    double volume_residual;  // max_{i<j} |s . (d_i s x d_j s)|, normalized
    double cross_residual;   // max_{i<j} |d_i s x d_j s|, normalized
    bool classical = false;
    bool quasi_classical = false;
    bool d_invariant = false;
    bool asymptotically_classical = false;
    bool agrees = false;  // verdicts match classify_point here
  };
  std::vector<PointResult> points;
  double radius_spread = 0.0;  // max - min of |s| over the grid
  bool classical = false;
  bool quasi_classical = false;
  bool d_invariant = false;
  bool asymptotically_classical = false;
  bool agrees = false;  // conjunction of per-point agreement
};

BlochReport bloch_classify(const ParametricModel& model,
                           const std::vector<RealVector>& grid,
                           const ToleranceConfig& config = {});

}  // namespace qestkit
