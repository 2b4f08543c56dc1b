#include <doctest.h>

#include "qestkit/infogeo.hpp"

using namespace qestkit;

namespace {

ModelPoint equatorial_point() {
  RealVector theta(2);
  theta << 0.5, 0.0;
  return evaluate(zoo_model("qubit-equatorial"), theta);
}

ModelPoint qutrit_point() {
  RealVector theta(2);
  theta << 0.2, 0.3;
  return evaluate(zoo_model("qutrit-qc", {{"c", 2.0}}), theta);
}

}  // namespace

TEST_CASE("equatorial qubit information matrices at (0.5, 0)") {
  const ModelPoint pt = equatorial_point();
  const ScoreSet scores = compute_scores(pt);
  const InfoMatrices mats = fisher_matrices(pt, scores);

  CHECK(std::abs(mats.G(0, 0) - 4.0 / 3.0) < 1e-12);
  CHECK(std::abs(mats.G(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(mats.G(0, 1)) < 1e-12);
  CHECK(mats.Z.imag().norm() < 1e-12);
  CHECK(rel_residual(RealMatrix(mats.Z.real()), mats.Ginv) < 1e-12);

  // first score has eigenvalues {-2, 2/3}
  const Eigensystem es = hermitian_eigensystem(scores.slds[0]);
  CHECK(es.values[0] == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(es.values[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

  // dual of the first score is (3/4) L_1 since G is diagonal
  CHECK(rel_residual(scores.sld_duals[0], Matrix(0.75 * scores.slds[0])) < 1e-12);

  // biorthogonality
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Complex v = sld_inner(pt.rho(), scores.sld_duals[i], scores.slds[j]);
      CHECK(std::abs(v - (i == j ? Complex(1, 0) : Complex(0, 0))) < 1e-12);
    }
}

TEST_CASE("qutrit information matrices at c=2, theta=(0.2, 0.3)") {
  const ModelPoint pt = qutrit_point();
  // spectrum {0.2, 0.4, 0.4} with a degenerate pair
  CHECK(pt.eig.p[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(pt.eig.p[1] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(pt.eig.p[2] == doctest::Approx(0.4).epsilon(1e-12));

  const ScoreSet scores = compute_scores(pt);
  const InfoMatrices mats = fisher_matrices(pt, scores);
  CHECK(std::abs(mats.G(0, 0) - 37.5) < 1e-9);
  CHECK(std::abs(mats.G(1, 1) - 4.0 / 15.0) < 1e-12);
  CHECK(std::abs(mats.Gt(1, 1).real() - 0.3) < 1e-12);
  CHECK(std::abs(mats.Gt(1, 1).real() / mats.G(1, 1) - 1.125) < 1e-10);
}

TEST_CASE("lemma suite passes on zoo and random models") {
  for (const ModelPoint& pt : {equatorial_point(), qutrit_point()}) {
    const ScoreSet scores = compute_scores(pt);
    const InfoMatrices mats = fisher_matrices(pt, scores);
    const LemmaReport rep = verify_lemma_suite(pt, scores, mats);
    CHECK(rep.pass);
  }

  Rng rng(123);
  for (int d : {2, 3, 4}) {
    for (int n : {1, 2, 3}) {
      const ModelPoint pt = random_model_point(rng, d, n);
      const ScoreSet scores = compute_scores(pt);
      const InfoMatrices mats = fisher_matrices(pt, scores);
      const LemmaReport rep = verify_lemma_suite(pt, scores, mats);
      INFO("d=", d, " n=", n);
      CHECK(rep.pass);
      for (const LemmaCheck& c : rep.checks)
        if (c.asserted) {
          INFO(c.name);
          CHECK(c.residual < 1e-8);
        }
    }
  }
}

TEST_CASE("lemma suite names and assertion flags") {
  const ModelPoint pt = equatorial_point();
  const ScoreSet scores = compute_scores(pt);
  const InfoMatrices mats = fisher_matrices(pt, scores);
  const LemmaReport rep = verify_lemma_suite(pt, scores, mats);

  // first-order shared-mean identity is asserted; higher orders are
  // diagnostics only (they fail on generic models)
  CHECK(rep.at("shared_mean.order1").asserted);
  CHECK_FALSE(rep.at("shared_mean.order2").asserted);
  CHECK_FALSE(rep.at("shared_mean.order3").asserted);
  CHECK_FALSE(rep.at("matrices.re_zinv_vs_g").asserted);

  CHECK(rep.at("superop.defining").pass);
  CHECK(rep.at("metric_exchange.probe").pass);
  CHECK(rep.at("psd.re_gt_minus_g").pass);
  CHECK(rep.at("matrices.re_z_equals_ginv").pass);

  CHECK_THROWS_AS(rep.at("nosuch"), Error);
}

TEST_CASE("higher-order shared-mean residuals are genuinely nonzero") {
  // on a generic model the order-2 identity fails at O(1), which is why it
  // is reported but not asserted
  Rng rng(7);
  const ModelPoint pt = random_model_point(rng, 3, 2);
  const ScoreSet scores = compute_scores(pt);
  const InfoMatrices mats = fisher_matrices(pt, scores);
  const LemmaReport rep = verify_lemma_suite(pt, scores, mats);
  CHECK(rep.at("shared_mean.order2").residual > 1e-3);
}

TEST_CASE("singular models are rejected with context") {
  // two parameters but a one-dimensional family direction: derivatives are
  // dependent, caught at construction
  const Matrix rho = bloch_to_state(Eigen::Vector3d(0.2, 0.0, 0.0));
  Matrix dx(2, 2);
  dx << 0, 0.5, 0.5, 0;
  CHECK_THROWS_AS(make_model_point(RealVector::Zero(2), rho, {dx, Matrix(2.0 * dx)}),
                  RegularityError);
}
