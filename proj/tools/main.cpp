// pfaffgeo: batch front end for the moving-frames engine. Subcommands run
// invariant reports over grids, the identity-check suite, and curve reports;
// exit code 0 = all pass, 1 = identity failure, 2 = usage/config error.
#include <iostream>

#include <CLI11.hpp>

#include "pfaffgeo/report.hpp"

namespace {

using pfaffgeo::RunConfig;

struct CommonFlags {
  std::string config;
  std::string params;
  std::string grid;
  std::vector<std::string> ranges;
  std::vector<std::string> tols;
  std::string checks;
  std::string surface;
  std::string format;
  std::string out;
  std::uint64_t seed = 0;
  int tsamples = 0;
  int npoints = 0;
  bool fault = false;
  std::string curve;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
  cmd->add_option("--config", fl.config, "key=value config file; flags override its values");
  cmd->add_option("--surface", fl.surface, "catalog surface name");
  cmd->add_option("--params", fl.params, "surface parameters, comma separated");
  cmd->add_option("--grid", fl.grid, "per-axis grid counts, comma separated");
  cmd->add_option("--range", fl.ranges, "axis,lo,hi (repeatable)");
  cmd->add_option("--tol", fl.tols, "check:value tolerance override (repeatable)");
  cmd->add_option("--checks", fl.checks, "comma separated check ids");
  cmd->add_option("--seed", fl.seed, "rng seed");
  cmd->add_option("--format", fl.format, "json or csv");
  cmd->add_option("--out", fl.out, "output path (default stdout)");
  cmd->add_option("--tsamples", fl.tsamples, "curve sample count");
  cmd->add_option("--points", fl.npoints, "sample points per check");
  cmd->add_flag("--fault-inject", fl.fault, "corrupt the connection table (must fail)");
  cmd->add_option("--curve", fl.curve, "curve fixture spec");
}

RunConfig build_config(const CLI::App* cmd, const CommonFlags& fl) {
  RunConfig cfg;
  if (cmd->count("--config")) pfaffgeo::apply_config_file(cfg, fl.config);
  if (cmd->count("--surface")) cfg.surface = fl.surface;
  if (cmd->count("--params")) {
    cfg.params.clear();
    std::stringstream ss(fl.params);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.params.push_back(std::stod(item));
  }
  if (cmd->count("--grid")) {
    cfg.grid.clear();
    std::stringstream ss(fl.grid);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.grid.push_back(std::stoi(item));
  }
  for (const std::string& r : fl.ranges) {
    std::stringstream ss(r);
    std::string a, lo, hi;
    if (!std::getline(ss, a, ',') || !std::getline(ss, lo, ',') || !std::getline(ss, hi, ','))
      throw pfaffgeo::ConfigError("--range expects axis,lo,hi");
    cfg.ranges[std::stoi(a)] = {std::stod(lo), std::stod(hi)};
  }
  for (const std::string& t : fl.tols) {
    auto pos = t.find(':');
    if (pos == std::string::npos) throw pfaffgeo::ConfigError("--tol expects check:value");
    cfg.tol[t.substr(0, pos)] = std::stod(t.substr(pos + 1));
  }
  if (cmd->count("--checks")) {
    cfg.checks.clear();
    std::stringstream ss(fl.checks);
    std::string id;
    while (std::getline(ss, id, ',')) cfg.checks.push_back(id);
  }
  if (cmd->count("--seed")) cfg.seed = fl.seed;
  if (cmd->count("--format")) cfg.format = fl.format;
  if (cmd->count("--out")) cfg.out = fl.out;
  if (cmd->count("--tsamples")) cfg.tsamples = fl.tsamples;
  if (cmd->count("--points")) cfg.npoints = fl.npoints;
  if (cmd->count("--fault-inject")) cfg.fault_inject = fl.fault;
  if (cmd->count("--curve")) cfg.curve = fl.curve;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical moving-frames engine for parametric hypersurfaces"};
  app.require_subcommand(1);

  CommonFlags inv_fl, check_fl, curve_fl, cat_fl;
  CLI::App* inv = app.add_subcommand("invariants", "curvature invariants over a grid");
  add_common(inv, inv_fl);
  CLI::App* check = app.add_subcommand("check", "run the identity-check suite");
  add_common(check, check_fl);
  CLI::App* curve = app.add_subcommand("curve", "curve curvature report along a fixture");
  add_common(curve, curve_fl);
  CLI::App* cat = app.add_subcommand("catalog", "list surfaces, curves and check ids");
  add_common(cat, cat_fl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (inv->parsed()) return pfaffgeo::cmd_invariants(build_config(inv, inv_fl));
    if (check->parsed()) return pfaffgeo::cmd_check(build_config(check, check_fl));
    if (curve->parsed()) return pfaffgeo::cmd_curve(build_config(curve, curve_fl));
    if (cat->parsed()) return pfaffgeo::cmd_catalog(build_config(cat, cat_fl));
  } catch (const pfaffgeo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
