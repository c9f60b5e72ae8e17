// Registry of executable identity checks. Each check evaluates both sides of
// one identity with the same differentiation engine and reports the largest
// residual over sampled points; the CLI check command and the acceptance
// suite both drive this registry.
#pragma once

#include <map>
#include <optional>

#include "pfaffgeo/curves.hpp"
#include "pfaffgeo/operators.hpp"
#include "pfaffgeo/spherical.hpp"

namespace pfaffgeo {

struct CheckContext {
  const SurfacePatch* patch = nullptr;
  std::uint64_t seed = 1;
  int npoints = 10;
  bool fault_inject = false;
  OperatorOpts opts;

  Rng rng{1};
  std::vector<Vec> points;

  CheckContext(const SurfacePatch& p, std::uint64_t seed_, int npoints_, bool fault);

  // Connection with the optional fault applied (used by checks that read the
  // context connection directly).
  ConnectionData conn(const Vec& u) const;

  std::vector<ScalarField> fields(int n, bool positive = false);
  // points where the shape table is invertible
  std::vector<Vec> elliptic_points(int n);
};

struct CheckDef {
  std::string id;
  std::string anchor;  // compact formula sketch of the identity
  double tol = 1e-4;
  std::function<bool(const SurfacePatch&)> applies;  // empty = all surfaces
  std::function<double(CheckContext&)> run;          // max residual
};

const std::vector<CheckDef>& identity_checks();

struct CheckRow {
  std::string id;
  std::string anchor;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Runs the selected checks (all applicable ones when ids is empty); rows come
// back in registry order regardless of scheduling. Unknown ids raise
// ConfigError.
std::vector<CheckRow> run_checks(const SurfacePatch& patch, const std::vector<std::string>& ids,
                                 std::uint64_t seed, int npoints, bool fault_inject,
                                 const std::map<std::string, double>& tol_overrides,
                                 int threads);

}  // namespace pfaffgeo
