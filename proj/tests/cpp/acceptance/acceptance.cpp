// Acceptance gate: one PASS/FAIL line per criterion, exit 1 on any failure.
// Run via ctest or directly; no arguments.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "qestkit/bounds.hpp"
#include "qestkit/classify.hpp"
#include "qestkit/infogeo.hpp"
#include "qestkit/model.hpp"

using namespace qestkit;

namespace {

int failures = 0;
bool current_ok = true;

// Always-on requirement: never compiled out in Release.
#define CHECK_C(cond, msg)                                                    \
  do {                                                                        \
    if (!(cond)) {                                                            \
      std::cerr << "       detail: " << msg << "  (" << __FILE__ << ":"      \
                << __LINE__ << ")\n";                                         \
      current_ok = false;                                                     \
    }                                                                         \
  } while (0)

void criterion(int id, const std::string& title, const std::function<void()>& body) {
  current_ok = true;
  try {
    body();
  } catch (const std::exception& err) {
    std::cerr << "       exception: " << err.what() << "\n";
    current_ok = false;
  }
  std::cout << (current_ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": "
            << title << "\n";
  if (!current_ok) ++failures;
}

struct CorpusEntry {
  ModelPoint point;
  ScoreSet scores;
  InfoMatrices mats;
  LemmaReport lemmas;
  ClassificationReport cls;
};

double min_eig(const Matrix& h) {
  return hermitian_eigensystem(hermitize(h)).values.minCoeff();
}

RealVector theta2(double a, double b) {
  RealVector t(2);
  t << a, b;
  return t;
}

}  // namespace

int main() {
  std::cout << "acceptance gate: estimation-geometry toolkit\n";

  // Shared corpus: 100 seeded random regular models per (d, n) in
  // {2,3,4} x {1,2,3}, with scores, matrices, identity checks, and
  // classification evaluated once.
  std::vector<CorpusEntry> corpus;
  {
    Rng rng(42);
    for (int d : {2, 3, 4})
      for (int n : {1, 2, 3})
        for (int k = 0; k < 100; ++k) {
          CorpusEntry e{random_model_point(rng, d, n), {}, {}, {}, {}};
          e.scores = compute_scores(e.point);
          e.mats = fisher_matrices(e.point, e.scores);
          e.lemmas = verify_lemma_suite(e.point, e.scores, e.mats);
          e.cls = classify_point(e.point);
          corpus.push_back(std::move(e));
        }
  }

  criterion(1, "identity suite on 900 seeded random models, residuals < 1e-8", [&] {
    double worst = 0.0;
    double worst_psd = 0.0;
    for (const CorpusEntry& e : corpus) {
      CHECK_C(e.lemmas.pass, "asserted identity failed on a corpus model");
      for (const LemmaCheck& c : e.lemmas.checks)
        if (c.asserted) worst = std::max(worst, c.residual);

      // positive-semidefinite orderings, absolute minimum eigenvalues
      const Matrix gc = e.mats.G.cast<Complex>();
      const Matrix gtinv = e.mats.Gtinv;
      const Matrix orderings[] = {
          e.mats.Gt.real().cast<Complex>() - gc,
          e.mats.Z - gtinv,
          e.mats.Zt - e.mats.Ginv.cast<Complex>(),
          gc + e.mats.Gt * e.mats.Zt * e.mats.Gt - 2.0 * e.mats.Gt,
          e.mats.Gt + gc * e.mats.Z * gc - 2.0 * gc,
      };
      for (const Matrix& m : orderings) {
        const double lo = min_eig(m);
        worst_psd = std::min(worst_psd, lo);
        CHECK_C(lo > -1e-8, "ordering violated: min eigenvalue " << lo);
      }
    }
    std::cout << "       corpus: " << corpus.size()
              << " models, worst asserted residual " << worst
              << ", worst ordering eigenvalue " << worst_psd << "\n";
  });

  criterion(2, "equatorial qubit at (0.5, 0): metric, Z, and bound anchors", [&] {
    const ModelPoint pt = evaluate(zoo_model("qubit-equatorial"), theta2(0.5, 0.0));
    const ScoreSet scores = compute_scores(pt);
    const InfoMatrices mats = fisher_matrices(pt, scores);
    CHECK_C(std::abs(mats.G(0, 0) - 4.0 / 3.0) < 1e-10, "G(0,0) = " << mats.G(0, 0));
    CHECK_C(std::abs(mats.G(1, 1) - 1.0) < 1e-10, "G(1,1) = " << mats.G(1, 1));
    CHECK_C(std::abs(mats.G(0, 1)) < 1e-10, "G(0,1) = " << mats.G(0, 1));
    CHECK_C(mats.Z.imag().norm() < 1e-10, "Im Z norm = " << mats.Z.imag().norm());

    const Weight w = identity_weight(2);
    const double cs = sld_cr_bound(mats, w);
    CHECK_C(std::abs(cs - 1.75) < 1e-4, "sld bound = " << cs);
    HolevoOptions numeric;
    numeric.method = HolevoOptions::Method::kNumeric;
    const HolevoSolution sol = holevo_bound(pt, w, numeric);
    CHECK_C(sol.converged, "numeric solver did not converge");
    CHECK_C(std::abs(sol.value - 1.75) < 1e-4, "numeric bound = " << sol.value);
    std::cout << "       sld " << cs << ", numeric " << sol.value << " in "
              << sol.evaluations << " evaluations\n";
  });

  criterion(3, "qutrit family c=2 at (0.2, 0.3): metric entries and verdicts", [&] {
    const ModelPoint pt =
        evaluate(zoo_model("qutrit-qc", {{"c", 2.0}}), theta2(0.2, 0.3));
    const ClassificationReport r = classify_point(pt);
    CHECK_C(r.quasi_classical.verdict && r.quasi_classical.residual < 1e-10,
            "commutator residual = " << r.quasi_classical.residual);
    CHECK_C(!r.classical.verdict, "classical verdict should be false");
    CHECK_C(!r.d_invariant.verdict, "D-invariant verdict should be false");
    CHECK_C(r.asymptotically_classical.verdict, "AC verdict should be true");

    const ScoreSet scores = compute_scores(pt);
    const InfoMatrices mats = fisher_matrices(pt, scores);
    CHECK_C(std::abs(mats.G(1, 1) - 4.0 / 15.0) < 1e-8, "g22 = " << mats.G(1, 1));
    CHECK_C(std::abs(mats.Gt(1, 1).real() - 0.3) < 1e-8,
            "gt22 = " << mats.Gt(1, 1).real());
    std::cout << "       g22 " << mats.G(1, 1) << ", gt22 " << mats.Gt(1, 1).real()
              << ", ratio " << mats.Gt(1, 1).real() / mats.G(1, 1) << "\n";
  });

  criterion(4, "fixed-radius qubit: D-invariant on the grid, bound matches", [&] {
    const ParametricModel model = zoo_model("qubit-fixed-radius", {{"s0", 0.8}});
    double worst = 0.0;
    for (double a : {0.1, 0.2, 0.3, 0.4})
      for (double b : {0.1, 0.2, 0.3, 0.4}) {
        const ModelPoint pt = evaluate(model, theta2(a, b));
        const ScoreSet scores = compute_scores(pt);
        const InfoMatrices mats = fisher_matrices(pt, scores);
        const ClassTest di = is_d_invariant(pt, scores, mats);
        const ClassTest ac = is_asymptotically_classical(pt, scores, mats);
        worst = std::max(worst, di.residual);
        CHECK_C(di.verdict && di.residual < 1e-8,
                "D-invariance residual " << di.residual << " at (" << a << ", " << b
                                         << ")");
        CHECK_C(!ac.verdict, "AC should fail at (" << a << ", " << b << ")");
      }
    std::cout << "       worst D-invariance residual on 4x4 grid: " << worst << "\n";

    const Weight w = identity_weight(2);
    const std::pair<double, double> spots[] = {{0.1, 0.1}, {0.3, 0.2}, {0.4, 0.4}};
    for (auto [a, b] : spots) {
      const ModelPoint pt = evaluate(model, theta2(a, b));
      const InfoMatrices mats = fisher_matrices(pt, compute_scores(pt));
      const double rld = rld_cr_bound(mats, w);
      HolevoOptions numeric;
      numeric.method = HolevoOptions::Method::kNumeric;
      const HolevoSolution sol = holevo_bound(pt, w, numeric);
      CHECK_C(std::abs(sol.value - rld) < 1e-4,
              "numeric " << sol.value << " vs rld " << rld << " at (" << a << ", "
                         << b << ")");
    }
  });

  criterion(5, "class containments hold with zero violations on the corpus", [&] {
    int checked = 0;
    for (const CorpusEntry& e : corpus) {
      const bool cl = e.cls.classical.verdict;
      const bool qc = e.cls.quasi_classical.verdict;
      const bool di = e.cls.d_invariant.verdict;
      const bool ac = e.cls.asymptotically_classical.verdict;
      CHECK_C(cl == (di && ac), "classical vs D-invariant+AC mismatch");
      CHECK_C(!cl || qc, "classical without quasi-classical");
      CHECK_C(!qc || ac, "quasi-classical without asymptotically classical");
      CHECK_C(e.cls.consistent, "report flagged inconsistent");
      ++checked;
    }
    std::cout << "       " << checked << " classification reports checked\n";
  });

  criterion(6, "numeric bound sandwiched between lower bounds and dual value", [&] {
    Rng rng(7);
    const std::pair<int, int> shapes[] = {{2, 1}, {2, 2}, {2, 3},
                                          {3, 1}, {3, 2}, {3, 3}};
    int solved = 0;
    double worst_gap = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto [d, n] = shapes[i % 6];
      const ModelPoint pt = random_model_point(rng, d, n);
      const ScoreSet scores = compute_scores(pt);
      const InfoMatrices mats = fisher_matrices(pt, scores);
      for (int k = 0; k < 5; ++k) {
        const Weight w = make_weight(rng.positive_weight(n));
        const double lower =
            std::max(sld_cr_bound(mats, w), rld_cr_bound(mats, w));
        const double dual_value = holevo_objective(pt, scores.sld_duals, w);
        HolevoOptions numeric;
        numeric.method = HolevoOptions::Method::kNumeric;
        numeric.budget = 20000;
        const HolevoSolution sol = holevo_bound(pt, w, numeric);
        CHECK_C(sol.value >= lower - 1e-6,
                "below lower bound: " << sol.value << " < " << lower);
        CHECK_C(sol.value <= dual_value + 1e-9,
                "above dual anchor: " << sol.value << " > " << dual_value);
        worst_gap = std::max(worst_gap, sol.value - dual_value);
        ++solved;
      }
      if (n == 1) {
        // single-parameter anchor: the bound collapses to the SLD bound
        const Weight w = identity_weight(1);
        const HolevoSolution sol = holevo_bound(pt, w);
        const double cs = sld_cr_bound(mats, w);
        CHECK_C(std::abs(sol.value - cs) < 1e-10,
                "n=1 anchor: " << sol.value << " vs " << cs);
      }
    }
    std::cout << "       " << solved << " numeric solves, worst value-minus-anchor "
              << worst_gap << "\n";
  });

  criterion(7, "random qubit models are never classical or quasi-classical", [&] {
    Rng rng(1234);
    for (int i = 0; i < 100; ++i) {
      const int n = 2 + (i % 2);
      const ModelPoint pt = random_model_point(rng, 2, n);
      const ClassificationReport r = classify_point(pt);
      CHECK_C(!r.classical.verdict,
              "classical verdict true on random qubit model " << i);
      CHECK_C(!r.quasi_classical.verdict,
              "quasi-classical verdict true on random qubit model " << i);
    }
  });

  criterion(8, "Bloch-geometry and general classification agree on qubit grids", [&] {
    const auto grid2 = [](double lo, double hi, int k) {
      std::vector<RealVector> g;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          g.push_back(theta2(lo + i * (hi - lo) / (k - 1),
                             lo + j * (hi - lo) / (k - 1)));
      return g;
    };

    {
      const BlochReport b =
          bloch_classify(zoo_model("qubit-equatorial"), grid2(-0.35, 0.45, 3), {});
      CHECK_C(b.agrees, "equatorial grid disagreement");
    }
    {
      const BlochReport b =
          bloch_classify(zoo_model("qubit-fixed-radius"), grid2(0.1, 0.4, 3), {});
      CHECK_C(b.agrees, "fixed-radius grid disagreement");
    }
    {
      std::vector<RealVector> grid;
      for (double a : {-0.35, 0.05, 0.45})
        for (double b : {-0.35, 0.05, 0.45})
          for (double c : {-0.35, 0.05, 0.45}) {
            RealVector t(3);
            t << a, b, c;
            grid.push_back(t);
          }
      const BlochReport b = bloch_classify(zoo_model("qubit-full"), grid, {});
      CHECK_C(b.agrees, "full-model grid disagreement");
    }
  });

  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
