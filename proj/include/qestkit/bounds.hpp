#pragma once

#include <string>
#include <vector>

#include "qestkit/classify.hpp"
#include "qestkit/infogeo.hpp"
#include "qestkit/model.hpp"

namespace qestkit {

// Positive definite weight matrix with its symmetric square root cached.
struct Weight {
  RealMatrix W;
  RealMatrix sqrt;
};

// Validates symmetry and positive definiteness. InputError otherwise.
Weight make_weight(const RealMatrix& w);

Weight identity_weight(int n);

// tr(W G^{-1}).
double sld_cr_bound(const InfoMatrices& mats, const Weight& weight);

// tr(W Re Gt^{-1}) + || W^{1/2} Im Gt^{-1} W^{1/2} ||_1.
double rld_cr_bound(const InfoMatrices& mats, const Weight& weight);

// The scalarized estimation cost of one admissible collection X = (X^1..X^n):
// with H_ij = tr(rho X^j X^i), the value tr(W Re H) + ||W^{1/2} Im H W^{1/2}||_1.
double holevo_objective(const ModelPoint& point, const std::vector<Matrix>& X,
                        const Weight& weight);

// How well a collection satisfies the admissibility constraints:
// mean_residual  = max_i |tr(rho X^i)|
// score_residual = max_ij |tr(d_i rho X^j) - delta_ij|
struct Feasibility {
  double mean_residual = 0.0;
  double score_residual = 0.0;
};

Feasibility check_feasible(const ModelPoint& point, const std::vector<Matrix>& X);

struct HolevoOptions {
  enum class Method { kAuto, kNumeric, kClosedForm };

  Method method = Method::kAuto;
  // Cap on objective evaluations across all continuation stages.
  long budget = 100000;
  // Tolerance handed to the classification tests that gate the closed forms.
  double class_tol = tol::kClassify;
  // Optional warm start for the free coefficient vector (size n*m).
  RealVector start;
};

struct HolevoSolution {
  double value = 0.0;
  std::vector<Matrix> X;
  Matrix H;
  std::string method;  // "closed-form-sld", "closed-form-rld", "numeric"
  bool converged = false;
  long evaluations = 0;
  int stages = 0;
  // value minus max(sld bound, rld bound); small negatives are rounding.
  double gap_vs_lower = 0.0;
  Feasibility feasibility;
  // Exact (unsmoothed) objective at the end of each continuation stage.
  std::vector<double> stage_values;
};

// The scalar weighted estimation bound, minimized over admissible X.
//
// Auto method dispatch: an asymptotically classical point returns the SLD
// bound with X = the dual SLD scores; a D-invariant point returns the RLD
// bound with the same X (both exact there). Otherwise the numeric path
// parameterizes X^i = dual_i + sum_a c_ia B_a over an orthonormal basis B
// of the admissible directions and minimizes by smoothed gradient descent
// with continuation on the smoothing parameter, tracking the best exact
// objective value seen. ClosedForm on a model that fits neither special
// class raises InputError.
HolevoSolution holevo_bound(const ModelPoint& point, const Weight& weight,
                            const HolevoOptions& options = {});

}  // namespace qestkit
