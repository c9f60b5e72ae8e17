// Batch front-end plumbing: run configuration (file + flag merge), grids,
// deterministic serialization, and the command implementations behind the
// CLI subcommands.
#pragma once

#include <iosfwd>
#include <map>

#include "pfaffgeo/checks.hpp"

namespace pfaffgeo {

struct RunConfig {
  std::string surface = "hypersphere";
  std::vector<double> params = {4.0, 1.0};
  std::vector<int> grid;                                   // per-axis counts
  std::map<int, std::array<double, 2>> ranges;             // 1-based axis
  std::map<std::string, double> tol;                       // per-check overrides
  std::vector<std::string> checks;                         // empty = all applicable
  std::uint64_t seed = 1;
  std::string format = "json";  // json | csv
  std::string out;              // empty = stdout
  bool fault_inject = false;
  std::string curve = "line";
  int tsamples = 50;
  int npoints = 10;  // sample points per check

  void validate() const;
};

// key=value lines, '#' comments; repeatable keys: range, tol, checks.
void apply_config_file(RunConfig& cfg, const std::string& path);

// worker cap: PFAFFGEO_THREADS, else hardware concurrency, at least 1
int worker_count();

// shortest round-trip decimal text for a double (deterministic)
std::string format_double(double v);

std::vector<Vec> make_grid(const SurfacePatch& patch, const RunConfig& cfg);

int cmd_invariants(const RunConfig& cfg);
int cmd_check(const RunConfig& cfg);
int cmd_curve(const RunConfig& cfg);
int cmd_catalog(const RunConfig& cfg);

}  // namespace pfaffgeo
