#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qestkit/bounds.hpp"
#include "qestkit/classify.hpp"
#include "qestkit/infogeo.hpp"
#include "qestkit/model.hpp"
#include "qestkit/report.hpp"

namespace py = pybind11;
using namespace qestkit;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      return py::int_(j.get<long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      throw Error("unsupported JSON value type");
  }
}

ParametricModel model_from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw InputError(std::string("malformed model JSON: ") + err.what());
  }
  return parse_model(j);
}

HolevoOptions make_options(const std::string& method, int budget, double tol) {
  HolevoOptions opt;
  if (method == "auto")
    opt.method = HolevoOptions::Method::kAuto;
  else if (method == "numeric")
    opt.method = HolevoOptions::Method::kNumeric;
  else if (method == "closed-form")
    opt.method = HolevoOptions::Method::kClosedForm;
  else
    throw InputError("method must be auto, numeric, or closed-form");
  opt.budget = budget;
  opt.class_tol = tol;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "quantum estimation geometry: scores, Fisher matrices, model "
            "classification, and Cramer-Rao / Holevo bounds";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<RegularityError>(m, "RegularityError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<ModelPoint>(m, "Point")
      .def_property_readonly("theta", [](const ModelPoint& p) { return p.theta; })
      .def_property_readonly("rho", [](const ModelPoint& p) { return p.rho(); })
      .def_property_readonly("drho", [](const ModelPoint& p) { return p.drho; })
      .def_property_readonly("dim", &ModelPoint::dim)
      .def_property_readonly("params", &ModelPoint::params)
      .def("__repr__", [](const ModelPoint& p) {
        return "<Point dim=" + std::to_string(p.dim()) +
               " params=" + std::to_string(p.params()) + ">";
      });

  py::class_<ParametricModel>(m, "Model")
      .def_property_readonly("name",
                             [](const ParametricModel& mdl) { return mdl.name; })
      .def_property_readonly("dim",
                             [](const ParametricModel& mdl) { return mdl.dim; })
      .def_property_readonly(
          "params", [](const ParametricModel& mdl) { return mdl.nparams; })
      .def_property_readonly(
          "summary", [](const ParametricModel& mdl) { return mdl.summary; })
      .def("__repr__", [](const ParametricModel& mdl) {
        return "<Model " + mdl.name + " dim=" + std::to_string(mdl.dim) +
               " params=" + std::to_string(mdl.nparams) + ">";
      });

  m.def("zoo_catalog", [] {
    py::list out;
    for (const ZooEntry& e : zoo_catalog()) {
      py::dict d;
      d["name"] = e.name;
      d["summary"] = e.summary;
      d["dim"] = e.dim;
      d["params"] = e.nparams;
      d["defaults"] = e.defaults;
      out.append(d);
    }
    return out;
  });

  m.def("zoo_model", &zoo_model, py::arg("name"),
        py::arg("settings") = std::map<std::string, double>{});
  m.def("load_model", &load_model, py::arg("path"));
  m.def("model_from_json", &model_from_json_text, py::arg("text"));
  m.def(
      "model_to_json",
      [](const ParametricModel& mdl) { return model_json(mdl).dump(2); },
      py::arg("model"));

  m.def("evaluate", &evaluate, py::arg("model"), py::arg("theta"),
        py::arg("fd_step") = 1e-5);
  m.def(
      "make_point",
      [](const RealVector& theta, const Matrix& rho,
         const std::vector<Matrix>& drho) {
        return make_model_point(theta, rho, drho);
      },
      py::arg("theta"), py::arg("rho"), py::arg("drho"));

  m.def(
      "scores",
      [](const ModelPoint& point) {
        const ScoreSet s = compute_scores(point);
        py::dict out;
        out["slds"] = s.slds;
        out["rlds"] = s.rlds;
        out["sld_duals"] = s.sld_duals;
        out["rld_duals"] = s.rld_duals;
        return out;
      },
      py::arg("point"));

  m.def(
      "matrices",
      [](const ModelPoint& point) {
        const InfoMatrices mats = fisher_matrices(point, compute_scores(point));
        py::dict out;
        out["G"] = mats.G;
        out["Gt"] = mats.Gt;
        out["Z"] = mats.Z;
        out["Zt"] = mats.Zt;
        out["Ginv"] = mats.Ginv;
        out["Gtinv"] = mats.Gtinv;
        out["ill_conditioned"] = mats.ill_conditioned;
        out["cond_G"] = mats.cond_G;
        out["cond_Gt"] = mats.cond_Gt;
        return out;
      },
      py::arg("point"));

  m.def(
      "lemma_suite",
      [](const ModelPoint& point, double tol, std::uint64_t probe_seed) {
        const ScoreSet s = compute_scores(point);
        const InfoMatrices mats = fisher_matrices(point, s);
        return json_to_py(report_json(verify_lemma_suite(point, s, mats, tol,
                                                         probe_seed)));
      },
      py::arg("point"), py::arg("tol") = 1e-8, py::arg("probe_seed") = 42);

  m.def(
      "classify",
      [](const ModelPoint& point, double tol) {
        ToleranceConfig config;
        config.tol = tol;
        return json_to_py(report_json(classify_point(point, config)));
      },
      py::arg("point"), py::arg("tol") = tol::kClassify);

  m.def(
      "classify_global",
      [](const ParametricModel& mdl, const std::vector<RealVector>& grid,
         double tol) {
        ToleranceConfig config;
        config.tol = tol;
        return json_to_py(report_json(classify_global(mdl, grid, config)));
      },
      py::arg("model"), py::arg("grid"), py::arg("tol") = tol::kClassify);

  m.def(
      "bloch_classify",
      [](const ParametricModel& mdl, const std::vector<RealVector>& grid,
         double tol) {
        ToleranceConfig config;
        config.tol = tol;
        return json_to_py(report_json(bloch_classify(mdl, grid, config)));
      },
      py::arg("model"), py::arg("grid"), py::arg("tol") = tol::kClassify);

  m.def(
      "bounds",
      [](const ModelPoint& point, py::object weight, const std::string& method,
         int budget, double tol) {
        const Weight w = weight.is_none()
                             ? identity_weight(point.params())
                             : make_weight(weight.cast<RealMatrix>());
        const InfoMatrices mats = fisher_matrices(point, compute_scores(point));
        const HolevoSolution sol = holevo_bound(point, w, make_options(method, budget, tol));
        py::dict out;
        out["sld_bound"] = sld_cr_bound(mats, w);
        out["rld_bound"] = rld_cr_bound(mats, w);
        out["holevo"] = json_to_py(report_json(sol));
        return out;
      },
      py::arg("point"), py::arg("weight") = py::none(),
      py::arg("method") = "auto", py::arg("budget") = 100000,
      py::arg("tol") = tol::kClassify);

  m.attr("__version__") = "0.1.0";
}
