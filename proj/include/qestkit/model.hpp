#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qestkit/algebra.hpp"
#include "qestkit/rng.hpp"
#include "qestkit/types.hpp"

namespace qestkit {

// A parametric family evaluated at one parameter vector: the state, its
// validated eigensystem, and one Hermitian traceless derivative per
// parameter. Construction enforces every regularity condition, so holding
// a ModelPoint means the point is usable.
struct ModelPoint {
  RealVector theta;
  StateEigensystem eig;
  std::vector<Matrix> drho;

  const Matrix& rho() const { return eig.rho; }
  int dim() const { return eig.dim(); }
  int params() const { return static_cast<int>(drho.size()); }
};

// Per-condition diagnostics behind make_model_point's checks.
struct RegularityReport {
  struct Item {
    std::string name;
    double residual;
    bool pass;
  };
  std::vector<Item> items;
  bool pass = false;
};

RegularityReport validate_regularity(const Matrix& rho, const std::vector<Matrix>& drho);

// Validates and builds. InputError for malformed pieces, RegularityError
// for rank or independence failures.
ModelPoint make_model_point(const RealVector& theta, const Matrix& rho,
                            const std::vector<Matrix>& drho);

// Qubit Bloch coordinates: rho = (I + s . sigma)/2, |s| < 1 for full rank.
Matrix bloch_to_state(const Eigen::Vector3d& s);
Eigen::Vector3d state_to_bloch(const Matrix& rho);

// A qubit family given by its Bloch-vector map. When `jacobian` is absent,
// evaluate() differentiates the map by central differences.
struct BlochMap {
  std::function<Eigen::Vector3d(const RealVector&)> s;
  std::function<Eigen::Matrix3Xd(const RealVector&)> jacobian;
};

// One stored point of a tabulated model.
struct ExplicitPoint {
  RealVector theta;
  Matrix rho;
  std::vector<Matrix> drho;
};

// A parametric model the toolkit can evaluate anywhere in its domain.
// Three kinds: Builtin (closed-form family), Bloch (qubit family through
// its Bloch map; qubit builtins also carry this), Explicit (a table of
// precomputed points).
struct ParametricModel {
  enum class Kind { kBuiltin, kBloch, kExplicit };

  Kind kind = Kind::kBuiltin;
  std::string name;
  int dim = 0;
  int nparams = 0;
  std::map<std::string, double> settings;
  std::string summary;

  std::function<Matrix(const RealVector&)> state;
  // Closed-form derivatives; empty means central differences on `state`.
  std::function<std::vector<Matrix>(const RealVector&)> derivatives;
  // Throws InputError for parameters outside the family's domain.
  std::function<void(const RealVector&)> domain;

  std::optional<BlochMap> bloch;
  std::vector<ExplicitPoint> points;
};

// Evaluates the family at theta. fd_step is the central-difference step
// used when no closed-form derivatives exist; the differentiated result
// is hermitized before validation.
ModelPoint evaluate(const ParametricModel& model, const RealVector& theta,
                    double fd_step = 1e-5);

ParametricModel make_bloch_model(std::string name, int nparams, BlochMap map);
ParametricModel make_explicit_model(std::string name, int dim,
                                    std::vector<ExplicitPoint> points);

// ---- model zoo ----

struct ZooEntry {
  std::string name;
  std::string summary;
  int dim;
  int nparams;                               // 0 means set by `settings`
  std::map<std::string, double> defaults;    // accepted settings
};

const std::vector<ZooEntry>& zoo_catalog();

// Builds a zoo member; unknown names or settings raise InputError.
ParametricModel zoo_model(const std::string& name,
                          const std::map<std::string, double>& settings = {});

// Random regular model point: spectrum bounded away from zero, random
// eigenbasis, random traceless Hermitian derivatives. Redraws up to
// `attempts` times if the regularity check fails, then rethrows.
ModelPoint random_model_point(Rng& rng, int dim, int nparams, int attempts = 10);

}  // namespace qestkit
