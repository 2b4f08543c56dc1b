#include "qestkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qestkit {

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

Json complex_json(Complex z) {
  return Json::array({round_sig(z.real()), round_sig(z.imag())});
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_matrix_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(round_sig(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const RealVector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(round_sig(v[i]));
  return a;
}

Json report_json(const RegularityReport& r) {
  Json items = Json::array();
  for (const auto& item : r.items)
    items.push_back({{"name", item.name},
                     {"residual", round_sig(item.residual)},
                     {"pass", item.pass}});
  return {{"items", std::move(items)}, {"pass", r.pass}};
}

Json report_json(const LemmaReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"residual", round_sig(c.residual)},
                      {"asserted", c.asserted},
                      {"pass", c.pass}});
  return {{"checks", std::move(checks)},
          {"tolerance", round_sig(r.tolerance)},
          {"probe_seed", r.probe_seed},
          {"pass", r.pass}};
}

Json report_json(const ClassTest& t) {
  Json details = Json::object();
  for (const auto& [name, value] : t.details) details[name] = round_sig(value);
  return {{"verdict", t.verdict},
          {"marginal", t.marginal},
          {"residual", round_sig(t.residual)},
          {"details", std::move(details)}};
}

Json report_json(const ClassificationReport& r) {
  return {{"classical", report_json(r.classical)},
          {"quasi_classical", report_json(r.quasi_classical)},
          {"d_invariant", report_json(r.d_invariant)},
          {"asymptotically_classical", report_json(r.asymptotically_classical)},
          {"consistent", r.consistent},
          {"notes", r.notes}};
}

namespace {

Json theta_list_json(const std::vector<RealVector>& thetas) {
  Json a = Json::array();
  for (const auto& t : thetas) a.push_back(vector_json(t));
  return a;
}

}  // namespace

Json report_json(const GlobalReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points)
    points.push_back(
        {{"theta", vector_json(p.theta)}, {"report", report_json(p.report)}});
  return {{"points", std::move(points)},
          {"global",
           {{"classical", r.classical},
            {"quasi_classical", r.quasi_classical},
            {"d_invariant", r.d_invariant},
            {"asymptotically_classical", r.asymptotically_classical}}},
          {"failing",
           {{"classical", theta_list_json(r.failing_classical)},
            {"quasi_classical", theta_list_json(r.failing_quasi_classical)},
            {"d_invariant", theta_list_json(r.failing_d_invariant)},
            {"asymptotically_classical",
             theta_list_json(r.failing_asymptotically_classical)}}}};
}

Json report_json(const BlochReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points) {
    points.push_back({{"theta", vector_json(p.theta)},
                      {"s", Json::array({round_sig(p.s[0]), round_sig(p.s[1]),
                                         round_sig(p.s[2])})},
                      {"radius", round_sig(p.radius)},
                      {"radial_residual", round_sig(p.radial_residual)},
                      {"volume_residual", round_sig(p.volume_residual)},
                      {"cross_residual", round_sig(p.cross_residual)},
                      {"classical", p.classical},
                      {"quasi_classical", p.quasi_classical},
                      {"d_invariant", p.d_invariant},
                      {"asymptotically_classical", p.asymptotically_classical},
                      {"agrees", p.agrees}});
  }
  return {{"points", std::move(points)},
          {"radius_spread", round_sig(r.radius_spread)},
          {"global",
           {{"classical", r.classical},
            {"quasi_classical", r.quasi_classical},
            {"d_invariant", r.d_invariant},
            {"asymptotically_classical", r.asymptotically_classical}}},
          {"agrees", r.agrees}};
}

Json report_json(const InfoMatrices& m) {
  return {{"G", real_matrix_json(m.G)},
          {"Gt", matrix_json(m.Gt)},
          {"Z", matrix_json(m.Z)},
          {"Zt", matrix_json(m.Zt)},
          {"Ginv", real_matrix_json(m.Ginv)},
          {"Gtinv", matrix_json(m.Gtinv)},
          {"cond_G", round_sig(m.cond_G)},
          {"cond_Gt", round_sig(m.cond_Gt)},
          {"ill_conditioned", m.ill_conditioned}};
}

Json report_json(const Feasibility& f) {
  return {{"mean_residual", round_sig(f.mean_residual)},
          {"score_residual", round_sig(f.score_residual)}};
}

Json report_json(const HolevoSolution& s) {
  Json stage_values = Json::array();
  for (double v : s.stage_values) stage_values.push_back(round_sig(v));
  Json collection = Json::array();
  for (const Matrix& x : s.X) collection.push_back(matrix_json(x));
  return {{"value", round_sig(s.value)},
          {"method", s.method},
          {"converged", s.converged},
          {"evaluations", s.evaluations},
          {"stages", s.stages},
          {"gap_vs_lower", round_sig(s.gap_vs_lower)},
          {"feasibility", report_json(s.feasibility)},
          {"stage_values", std::move(stage_values)},
          {"H", matrix_json(s.H)},
          {"collection", std::move(collection)}};
}

// ---- model files ----

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("model file: missing field \"") + key + "\"");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string())
    throw InputError(std::string("model file: field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

int need_int(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer())
    throw InputError(std::string("model file: field \"") + key +
                     "\" must be an integer");
  return v.get<int>();
}

Complex parse_complex(const Json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(std::string("model file: ") + where +
                     " entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix parse_matrix(const Json& j, int dim, const char* where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw InputError(std::string("model file: ") + where + " must be a " +
                     std::to_string(dim) + "x" + std::to_string(dim) + " array");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw InputError(std::string("model file: ") + where + " must be a " +
                       std::to_string(dim) + "x" + std::to_string(dim) + " array");
    for (int c = 0; c < dim; ++c) m(r, c) = parse_complex(row[c], where);
  }
  return m;
}

}  // namespace

ParametricModel parse_model(const Json& j) {
  const std::string name = need_string(j, "name");
  const int dim = need_int(j, "dim");
  const int params = need_int(j, "params");
  const std::string kind = need_string(j, "kind");

  if (kind == "builtin" || kind == "bloch") {
    const std::string builtin = need_string(j, "builtin_name");
    std::map<std::string, double> settings;
    if (j.contains("settings")) {
      const Json& s = j.at("settings");
      if (!s.is_object())
        throw InputError("model file: \"settings\" must be an object of numbers");
      for (const auto& [key, value] : s.items()) {
        if (!value.is_number())
          throw InputError("model file: setting \"" + key + "\" must be a number");
        settings[key] = value.get<double>();
      }
    }
    ParametricModel model = zoo_model(builtin, settings);
    if (model.dim != dim || model.nparams != params) {
      std::ostringstream msg;
      msg << "model file: \"" << builtin << "\" has dim " << model.dim << ", params "
          << model.nparams << "; file declares " << dim << ", " << params;
      throw InputError(msg.str());
    }
    if (kind == "bloch" && !model.bloch)
      throw InputError("model file: \"" + builtin + "\" has no Bloch-map form");
    return model;
  }

  if (kind == "explicit") {
    const Json& pts = need(j, "points");
    if (!pts.is_array() || pts.empty())
      throw InputError("model file: \"points\" must be a nonempty array");
    std::vector<ExplicitPoint> points;
    for (const Json& pj : pts) {
      ExplicitPoint p;
      const Json& th = need(pj, "theta");
      if (!th.is_array() || static_cast<int>(th.size()) != params)
        throw InputError("model file: point theta must have " +
                         std::to_string(params) + " entries");
      p.theta.resize(params);
      for (int i = 0; i < params; ++i) {
        if (!th[i].is_number())
          throw InputError("model file: theta entries must be numbers");
        p.theta[i] = th[i].get<double>();
      }
      p.rho = parse_matrix(need(pj, "rho"), dim, "rho");
      const Json& dr = need(pj, "drho");
      if (!dr.is_array() || static_cast<int>(dr.size()) != params)
        throw InputError("model file: drho must list one matrix per parameter");
      for (const Json& dj : dr) p.drho.push_back(parse_matrix(dj, dim, "drho"));
      points.push_back(std::move(p));
    }
    return make_explicit_model(name, dim, std::move(points));
  }

  throw InputError("model file: unknown kind \"" + kind +
                   "\" (expected builtin, bloch, or explicit)");
}

ParametricModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw InputError(std::string("malformed JSON in ") + path + ": " + err.what());
  }
  return parse_model(j);
}

Json model_json(const ParametricModel& model) {
  Json j{{"name", model.name},
         {"dim", model.dim},
         {"params", model.nparams}};
  switch (model.kind) {
    case ParametricModel::Kind::kBuiltin:
    case ParametricModel::Kind::kBloch: {
      j["kind"] = model.bloch ? "bloch" : "builtin";
      j["builtin_name"] = model.name;
      Json settings = Json::object();
      for (const auto& [key, value] : model.settings) settings[key] = round_sig(value);
      j["settings"] = std::move(settings);
      break;
    }
    case ParametricModel::Kind::kExplicit: {
      j["kind"] = "explicit";
      Json pts = Json::array();
      for (const ExplicitPoint& p : model.points) {
        Json drho = Json::array();
        for (const Matrix& d : p.drho) drho.push_back(matrix_json(d));
        pts.push_back({{"theta", vector_json(p.theta)},
                       {"rho", matrix_json(p.rho)},
                       {"drho", std::move(drho)}});
      }
      j["points"] = std::move(pts);
      break;
    }
  }
  return j;
}

// ---- CLI input parsing ----

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InputError(std::string(what) + ": not a number: \"" + s + "\"");
  }
  if (pos != s.size())
    throw InputError(std::string(what) + ": not a number: \"" + s + "\"");
  return v;
}

long parse_count(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw InputError(std::string(what) + ": not an integer: \"" + s + "\"");
  }
  if (pos != s.size())
    throw InputError(std::string(what) + ": not an integer: \"" + s + "\"");
  return v;
}

}  // namespace

RealVector parse_theta(const std::string& spec, int nparams) {
  const std::vector<std::string> parts = split(spec, ',');
  if (static_cast<int>(parts.size()) != nparams) {
    std::ostringstream msg;
    msg << "theta: expected " << nparams << " comma-separated values, got "
        << parts.size();
    throw InputError(msg.str());
  }
  RealVector theta(nparams);
  for (int i = 0; i < nparams; ++i) theta[i] = parse_number(parts[i], "theta");
  return theta;
}

std::vector<RealVector> parse_grid(const std::string& spec, int nparams) {
  const std::vector<std::string> axes = split(spec, 'x');
  if (static_cast<int>(axes.size()) != nparams) {
    std::ostringstream msg;
    msg << "grid: expected " << nparams << " axes joined by 'x', got " << axes.size();
    throw InputError(msg.str());
  }
  std::vector<std::vector<double>> samples;
  for (const std::string& axis : axes) {
    const std::vector<std::string> parts = split(axis, ':');
    if (parts.size() != 3)
      throw InputError("grid: each axis must be \"a:b:k\", got \"" + axis + "\"");
    const double a = parse_number(parts[0], "grid");
    const double b = parse_number(parts[1], "grid");
    const long k = parse_count(parts[2], "grid");
    if (k < 1) throw InputError("grid: sample count must be at least 1");
    std::vector<double> pts;
    if (k == 1) {
      pts.push_back(a);
    } else {
      for (long i = 0; i < k; ++i)
        pts.push_back(a + static_cast<double>(i) * (b - a) / static_cast<double>(k - 1));
    }
    samples.push_back(std::move(pts));
  }
  std::vector<RealVector> grid;
  std::vector<std::size_t> idx(samples.size(), 0);
  while (true) {
    RealVector theta(nparams);
    for (int i = 0; i < nparams; ++i) theta[i] = samples[i][idx[i]];
    grid.push_back(theta);
    int axis = nparams - 1;
    while (axis >= 0 && ++idx[axis] == samples[axis].size()) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return grid;
}

Weight load_weight(const std::string& path, int nparams) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open weight file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw InputError(std::string("malformed JSON in ") + path + ": " + err.what());
  }
  if (!j.is_array() || static_cast<int>(j.size()) != nparams)
    throw InputError("weight file: expected a " + std::to_string(nparams) + "x" +
                     std::to_string(nparams) + " real array");
  RealMatrix w(nparams, nparams);
  for (int r = 0; r < nparams; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != nparams)
      throw InputError("weight file: expected a " + std::to_string(nparams) + "x" +
                       std::to_string(nparams) + " real array");
    for (int c = 0; c < nparams; ++c) {
      if (!row[c].is_number())
        throw InputError("weight file: entries must be numbers");
      w(r, c) = row[c].get<double>();
    }
  }
  return make_weight(w);
}

}  // namespace qestkit
