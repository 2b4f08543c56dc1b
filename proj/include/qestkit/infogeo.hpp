#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qestkit/model.hpp"

namespace qestkit {

// Score operators of a model point. slds[i] solves the symmetric
// logarithmic-derivative equation for drho[i]; rlds[i] = rho^{-1} drho[i].
// The duals are the metric-raised combinations
//   sld_duals[i] = sum_j (G^{-1})_{ji} slds[j]
//   rld_duals[i] = sum_j (Gt^{-1})_{ji} rlds[j]
// so that <dual_i, score_j> = delta_ij in the matching inner product.
struct ScoreSet {
  std::vector<Matrix> slds;
  std::vector<Matrix> rlds;
  std::vector<Matrix> sld_duals;
  std::vector<Matrix> rld_duals;
};

// Throws RegularityError when a Fisher matrix is numerically singular
// (the model is irregular at the point).
ScoreSet compute_scores(const ModelPoint& point);

// The four n x n information matrices at a point:
//   G  = [sld_inner(L_i, L_j)]      real symmetric positive definite
//   Gt = [rld_inner(Lt_i, Lt_j)]    Hermitian positive definite
//   Z  = [rld_inner(L^i, L^j)]      Hermitian, Re Z = G^{-1} by construction
//   Zt = [sld_inner(Lt^i, Lt^j)]    Hermitian
struct InfoMatrices {
  RealMatrix G;
  Matrix Gt;
  Matrix Z;
  Matrix Zt;
  RealMatrix Ginv;
  Matrix Gtinv;
  bool ill_conditioned = false;  // cond(G) or cond(Gt) above tol::kCondWarn
  double cond_G = 0.0;
  double cond_Gt = 0.0;
};

InfoMatrices fisher_matrices(const ModelPoint& point, const ScoreSet& scores);

// One identity check: a scale-normalized residual plus whether the suite
// asserts it. Unasserted entries are diagnostics whose value is the point
// (they vanish only on special model classes).
struct LemmaCheck {
  std::string name;
  double residual;
  bool asserted;
  bool pass;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  double tolerance;
  std::uint64_t probe_seed;
  bool pass;  // every asserted check within tolerance

  const LemmaCheck& at(const std::string& name) const;
};

// Residual report over the structural identities tying SLD and RLD
// geometry together: score/dual biorthogonality, the shared mean identity
// for first-order scores, anti-selfadjointness of the commutation
// superoperator, dual-difference orthogonality, the positive-semidefinite
// orderings between the information matrices, and the exchange identities
// coupling them through the commutation superoperator. Probes are drawn
// from a generator seeded with probe_seed.
LemmaReport verify_lemma_suite(const ModelPoint& point, const ScoreSet& scores,
                               const InfoMatrices& mats, double tolerance = 1e-8,
                               std::uint64_t probe_seed = 42);

}  // namespace qestkit
