#include "qestkit/cli.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qestkit/bounds.hpp"
#include "qestkit/classify.hpp"
#include "qestkit/report.hpp"
#include "qestkit/rng.hpp"

namespace qestkit {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", round_sig(x));
  return buf;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

double parse_setting_value(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InputError("param: not a number: \"" + s + "\"");
  }
  if (pos != s.size()) throw InputError("param: not a number: \"" + s + "\"");
  return v;
}

struct ModelArgs {
  std::string file;
  std::string zoo;
  std::vector<std::string> params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", file, "model JSON file");
    cmd->add_option("--zoo", zoo, "catalog model name");
    cmd->add_option("--param", params, "catalog model setting, name=value")
        ->take_all();
  }

  ParametricModel resolve() const {
    if (file.empty() == zoo.empty())
      throw InputError("provide exactly one of --model or --zoo");
    if (!file.empty()) {
      if (!params.empty())
        throw InputError("--param only applies to --zoo models");
      return load_model(file);
    }
    std::map<std::string, double> settings;
    for (const std::string& kv : params) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw InputError("param: expected name=value, got \"" + kv + "\"");
      settings[kv.substr(0, eq)] = parse_setting_value(kv.substr(eq + 1));
    }
    return zoo_model(zoo, settings);
  }
};

void emit(const Json& j, bool table_rendered) {
  if (!table_rendered) std::cout << j.dump(2) << "\n";
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void print_class_table(const ClassificationReport& r) {
  const auto row = [](const char* name, const ClassTest& t) {
    std::printf("  %-26s %-4s residual %-12s%s\n", name, yes_no(t.verdict),
                fmt(t.residual).c_str(), t.marginal ? "  (marginal)" : "");
  };
  row("classical", r.classical);
  row("quasi-classical", r.quasi_classical);
  row("D-invariant", r.d_invariant);
  row("asymptotically classical", r.asymptotically_classical);
  std::printf("  consistent: %s\n", yes_no(r.consistent));
  for (const std::string& note : r.notes) std::printf("  note: %s\n", note.c_str());
}

int cmd_classify(const ModelArgs& margs, const std::string& theta_spec,
                 const std::string& grid_spec, double tolerance,
                 const std::string& format, bool timings) {
  const Stopwatch watch;
  const ParametricModel model = margs.resolve();
  if (theta_spec.empty() == grid_spec.empty())
    throw InputError("provide exactly one of --theta or --grid");
  const ToleranceConfig config{tolerance};
  const bool table = format == "table";

  Json out{{"command", "classify"},
           {"model", model_json(model)},
           {"tolerance", round_sig(tolerance)}};

  if (!theta_spec.empty()) {
    const RealVector theta = parse_theta(theta_spec, model.nparams);
    const ClassificationReport report = classify_point(evaluate(model, theta), config);
    out["theta"] = vector_json(theta);
    out["report"] = report_json(report);
    if (table) {
      std::printf("classify  model=%s  theta=%s  tol=%s\n", model.name.c_str(),
                  theta_spec.c_str(), fmt(tolerance).c_str());
      print_class_table(report);
    }
  } else {
    const std::vector<RealVector> grid = parse_grid(grid_spec, model.nparams);
    const GlobalReport global = classify_global(model, grid, config);
    out["grid"] = grid_spec;
    out["global_report"] = report_json(global);
    if (model.bloch && model.dim == 2)
      out["bloch_report"] = report_json(bloch_classify(model, grid, config));
    if (table) {
      std::printf("classify  model=%s  grid=%s  points=%zu  tol=%s\n",
                  model.name.c_str(), grid_spec.c_str(), global.points.size(),
                  fmt(tolerance).c_str());
      const auto row = [&](const char* name, bool verdict, std::size_t failing) {
        std::printf("  %-26s %-4s (fails at %zu of %zu points)\n", name,
                    yes_no(verdict), failing, global.points.size());
      };
      row("classical", global.classical, global.failing_classical.size());
      row("quasi-classical", global.quasi_classical,
          global.failing_quasi_classical.size());
      row("D-invariant", global.d_invariant, global.failing_d_invariant.size());
      row("asymptotically classical", global.asymptotically_classical,
          global.failing_asymptotically_classical.size());
      if (out.contains("bloch_report"))
        std::printf("  Bloch-geometry agreement: %s\n",
                    yes_no(out["bloch_report"]["agrees"].get<bool>()));
    }
  }
  if (timings) out["timings"] = {{"total_ms", round_sig(watch.ms())}};
  emit(out, table);
  return 0;
}

int cmd_bounds(const ModelArgs& margs, const std::string& theta_spec,
               const std::string& weight_spec, const std::string& method_name,
               double tolerance, long budget, const std::string& format,
               bool timings) {
  const Stopwatch watch;
  const ParametricModel model = margs.resolve();
  if (theta_spec.empty()) throw InputError("bounds needs --theta");
  const RealVector theta = parse_theta(theta_spec, model.nparams);
  const ModelPoint point = evaluate(model, theta);

  const Weight weight = weight_spec == "identity"
                            ? identity_weight(model.nparams)
                            : load_weight(weight_spec, model.nparams);

  HolevoOptions options;
  if (method_name == "auto") {
    options.method = HolevoOptions::Method::kAuto;
  } else if (method_name == "numeric") {
    options.method = HolevoOptions::Method::kNumeric;
  } else if (method_name == "closed-form") {
    options.method = HolevoOptions::Method::kClosedForm;
  } else {
    throw InputError("method must be auto, numeric, or closed-form");
  }
  options.budget = budget;
  options.class_tol = tolerance;

  const ScoreSet scores = compute_scores(point);
  const InfoMatrices mats = fisher_matrices(point, scores);
  const double sld_bound = sld_cr_bound(mats, weight);
  const double rld_bound = rld_cr_bound(mats, weight);
  const HolevoSolution sol = holevo_bound(point, weight, options);

  Json out{{"command", "bounds"},
           {"model", model_json(model)},
           {"theta", vector_json(theta)},
           {"weight", real_matrix_json(weight.W)},
           {"tolerance", round_sig(tolerance)},
           {"budget", budget},
           {"sld_bound", round_sig(sld_bound)},
           {"rld_bound", round_sig(rld_bound)},
           {"holevo", report_json(sol)},
           {"matrices", report_json(mats)}};
  if (timings) out["timings"] = {{"total_ms", round_sig(watch.ms())}};

  const bool table = format == "table";
  if (table) {
    std::printf("bounds  model=%s  theta=%s  method=%s\n", model.name.c_str(),
                theta_spec.c_str(), sol.method.c_str());
    std::printf("  sld-cr bound : %s\n", fmt(sld_bound).c_str());
    std::printf("  rld-cr bound : %s\n", fmt(rld_bound).c_str());
    std::printf("  holevo bound : %s  (%s, %ld evaluations, converged %s)\n",
                fmt(sol.value).c_str(), sol.method.c_str(), sol.evaluations,
                yes_no(sol.converged));
    std::printf("  gap vs max lower bound: %s\n", fmt(sol.gap_vs_lower).c_str());
  }
  emit(out, table);
  return sol.converged ? 0 : 3;
}

int cmd_verify(long count, int dim, int nparams, std::uint64_t seed,
               double tolerance, const std::string& format, bool timings) {
  const Stopwatch watch;
  if (count < 1) throw InputError("verify: --random must be at least 1");
  if (dim < 2) throw InputError("verify: --dim must be at least 2");
  if (nparams < 1 || nparams > dim * dim - 1) {
    std::ostringstream msg;
    msg << "verify: --params must lie in [1, " << dim * dim - 1 << "] for dim "
        << dim;
    throw InputError(msg.str());
  }

  Rng rng(seed);
  Json models = Json::array();
  bool all_pass = true;
  double worst = 0.0;
  std::string worst_name;
  for (long i = 0; i < count; ++i) {
    const ModelPoint point = random_model_point(rng, dim, nparams);
    const ScoreSet scores = compute_scores(point);
    const InfoMatrices mats = fisher_matrices(point, scores);
    const LemmaReport lemmas = verify_lemma_suite(point, scores, mats, tolerance, seed);
    all_pass = all_pass && lemmas.pass;
    for (const LemmaCheck& check : lemmas.checks)
      if (check.asserted && check.residual > worst) {
        worst = check.residual;
        worst_name = check.name;
      }
    models.push_back({{"index", i}, {"lemmas", report_json(lemmas)}});
  }

  Json out{{"command", "verify"},
           {"config",
            {{"count", count},
             {"dim", dim},
             {"params", nparams},
             {"seed", seed},
             {"tolerance", round_sig(tolerance)}}},
           {"models", std::move(models)},
           {"worst_asserted", {{"name", worst_name}, {"residual", round_sig(worst)}}},
           {"pass", all_pass}};
  if (timings) out["timings"] = {{"total_ms", round_sig(watch.ms())}};

  const bool table = format == "table";
  if (table) {
    std::printf("verify  %ld random models  dim=%d  params=%d  seed=%llu\n", count,
                dim, nparams, static_cast<unsigned long long>(seed));
    std::printf("  worst asserted residual: %s (%s)\n", fmt(worst).c_str(),
                worst_name.c_str());
    std::printf("  pass: %s\n", yes_no(all_pass));
  }
  emit(out, table);
  return all_pass ? 0 : 2;
}

int cmd_zoo(bool list, const std::string& describe, const std::string& format,
            bool timings) {
  const Stopwatch watch;
  const bool table = format == "table";
  Json out{{"command", "zoo"}};

  const auto entry_json = [](const ZooEntry& e) {
    Json defaults = Json::object();
    for (const auto& [key, value] : e.defaults) defaults[key] = round_sig(value);
    return Json{{"name", e.name},
                {"summary", e.summary},
                {"dim", e.dim},
                {"params", e.nparams},
                {"defaults", std::move(defaults)}};
  };

  if (!describe.empty()) {
    const ZooEntry* found = nullptr;
    for (const ZooEntry& e : zoo_catalog())
      if (e.name == describe) found = &e;
    if (!found) throw InputError("unknown catalog model: " + describe);
    out["model"] = entry_json(*found);
    if (table) {
      std::printf("%s  (dim %d, %d parameters)\n", found->name.c_str(), found->dim,
                  found->nparams);
      std::printf("  %s\n", found->summary.c_str());
      for (const auto& [key, value] : found->defaults)
        std::printf("  setting %s = %s\n", key.c_str(), fmt(value).c_str());
    }
  } else {
    (void)list;  // listing is the default action
    Json entries = Json::array();
    for (const ZooEntry& e : zoo_catalog()) entries.push_back(entry_json(e));
    out["models"] = std::move(entries);
    if (table) {
      for (const ZooEntry& e : zoo_catalog())
        std::printf("%-20s dim=%d params=%d  %s\n", e.name.c_str(), e.dim, e.nparams,
                    e.summary.c_str());
    }
  }
  if (timings) out["timings"] = {{"total_ms", round_sig(watch.ms())}};
  emit(out, table);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"quantum estimation geometry toolkit: score operators, information "
               "matrices, model classification, and precision bounds"};
  app.name("qestkit");
  app.require_subcommand(1);

  std::string format = "json";
  double tolerance = tol::kClassify;
  bool timings = false;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}))
        ->default_val("json");
    cmd->add_option("--tol", tolerance, "classification tolerance")
        ->default_val(tol::kClassify);
    cmd->add_flag("--timings", timings,
                  "include wall-clock timings (breaks byte determinism)");
  };

  int code = 0;

  auto* classify = app.add_subcommand(
      "classify", "class membership tests at a point or over a grid");
  ModelArgs classify_model;
  classify_model.attach(classify);
  std::string classify_theta, classify_grid;
  classify->add_option("--theta", classify_theta, "parameter point v1,v2,...");
  classify->add_option("--grid", classify_grid,
                       "parameter grid a:b:k per axis, axes joined by 'x'");
  add_common(classify);
  classify->callback([&] {
    code = cmd_classify(classify_model, classify_theta, classify_grid, tolerance,
                        format, timings);
  });

  auto* bounds = app.add_subcommand(
      "bounds", "SLD, RLD, and Holevo precision bounds at a point");
  ModelArgs bounds_model;
  bounds_model.attach(bounds);
  std::string bounds_theta, weight_spec = "identity", method_name = "auto";
  long budget = 100000;
  bounds->add_option("--theta", bounds_theta, "parameter point v1,v2,...");
  bounds->add_option("--weight", weight_spec,
                     "\"identity\" or a JSON file with an n x n real array")
      ->default_val("identity");
  bounds->add_option("--method", method_name, "auto, numeric, or closed-form")
      ->default_val("auto");
  bounds->add_option("--budget", budget, "objective evaluation budget")
      ->default_val(100000);
  add_common(bounds);
  bounds->callback([&] {
    code = cmd_bounds(bounds_model, bounds_theta, weight_spec, method_name,
                      tolerance, budget, format, timings);
  });

  auto* verify = app.add_subcommand(
      "verify", "check the structural identities on random regular models");
  long verify_count = 20;
  int verify_dim = 3, verify_params = 2;
  std::uint64_t verify_seed = default_seed();
  verify->add_option("--random", verify_count, "number of random models")
      ->default_val(20);
  verify->add_option("--dim", verify_dim, "state dimension")->default_val(3);
  verify->add_option("--params", verify_params, "parameter count")->default_val(2);
  verify->add_option("--seed", verify_seed, "generator seed");
  add_common(verify);
  verify->callback([&] {
    code = cmd_verify(verify_count, verify_dim, verify_params, verify_seed,
                      tolerance, format, timings);
  });

  auto* zoo = app.add_subcommand("zoo", "list or describe the model catalog");
  bool zoo_list = false;
  std::string zoo_describe;
  zoo->add_flag("--list", zoo_list, "list catalog models (default)");
  zoo->add_option("--describe", zoo_describe, "describe one catalog model");
  add_common(zoo);
  zoo->callback([&] { code = cmd_zoo(zoo_list, zoo_describe, format, timings); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const RegularityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace qestkit
