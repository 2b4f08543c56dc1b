#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qestkit/bounds.hpp"
#include "qestkit/classify.hpp"
#include "qestkit/infogeo.hpp"
#include "qestkit/model.hpp"

namespace qestkit {

using Json = nlohmann::json;

// Rounds to 12 significant digits. Every floating-point number placed in a
// report goes through this, which (with nlohmann's sorted keys and
// shortest-round-trip float printing) makes serialized reports byte-stable.
double round_sig(double x, int digits = 12);

Json complex_json(Complex z);
Json matrix_json(const Matrix& m);            // nested rows of [re, im]
Json real_matrix_json(const RealMatrix& m);   // nested rows of numbers
Json vector_json(const RealVector& v);

Json report_json(const RegularityReport& r);
Json report_json(const LemmaReport& r);
Json report_json(const ClassTest& t);
Json report_json(const ClassificationReport& r);
Json report_json(const GlobalReport& r);
Json report_json(const BlochReport& r);
Json report_json(const InfoMatrices& m);
Json report_json(const Feasibility& f);
Json report_json(const HolevoSolution& s);

// ---- model files ----
//
// {
//   "name":    display name,
//   "dim":     state dimension,
//   "params":  parameter count,
//   "kind":    "builtin" | "bloch" | "explicit",
//   builtin/bloch: "builtin_name": catalog key, "settings": {name: value},
//   explicit:      "points": [{"theta": [..], "rho": [[[re,im],..],..],
//                              "drho": [d x d arrays, one per parameter]}]
// }
//
// Complex entries are always two-element [re, im] arrays.
ParametricModel parse_model(const Json& j);
ParametricModel load_model(const std::string& path);
Json model_json(const ParametricModel& model);

// ---- CLI input parsing ----

// "v1,v2,..." with exactly nparams entries.
RealVector parse_theta(const std::string& spec, int nparams);

// Axes joined by 'x'; each axis "a:b:k" takes k uniform samples on [a, b]
// (endpoints included, k = 1 means the single point a). Points come out in
// lexicographic order, first axis slowest.
std::vector<RealVector> parse_grid(const std::string& spec, int nparams);

// Reads an n x n real array from a JSON file and validates it as a weight.
Weight load_weight(const std::string& path, int nparams);

}  // namespace qestkit
