#include "pfaffgeo/report.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace pfaffgeo {

using Json = nlohmann::ordered_json;

namespace {

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    std::stringstream inner(item);
    std::string tok;
    while (inner >> tok) out.push_back(std::stod(tok));
  }
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  auto b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + cfg.out + "'");
  f << text;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

void append_vec_csv(std::string& line, const Vec& v, bool valid) {
  for (int i = 0; i < v.size(); ++i) {
    line += ',';
    line += valid ? format_double(v(i)) : "nan";
  }
}

// partition [0, n) statically so the assembly order never depends on timing
template <class F>
void parallel_rows(std::size_t n, int workers, F&& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = static_cast<std::size_t>(t); i < n;
           i += static_cast<std::size_t>(workers))
        fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

void RunConfig::validate() const {
  if (format != "json" && format != "csv")
    throw ConfigError("format must be 'json' or 'csv'");
  for (int g : grid)
    if (g < 1) throw ConfigError("grid counts must be >= 1");
  if (tsamples < 2) throw ConfigError("tsamples must be >= 2");
  if (npoints < 1) throw ConfigError("points must be >= 1");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "surface") {
      cfg.surface = value;
    } else if (key == "params") {
      cfg.params = parse_numbers(value);
    } else if (key == "grid") {
      cfg.grid.clear();
      for (double d : parse_numbers(value)) cfg.grid.push_back(static_cast<int>(d));
    } else if (key == "range") {
      auto nums = parse_numbers(value);
      if (nums.size() != 3)
        throw ConfigError("range expects 'axis,lo,hi' (config line " + std::to_string(lineno) + ")");
      cfg.ranges[static_cast<int>(nums[0])] = {nums[1], nums[2]};
    } else if (key == "tol") {
      auto pos = value.find(':');
      if (pos == std::string::npos) pos = value.find(',');
      if (pos == std::string::npos)
        throw ConfigError("tol expects 'check:value' (config line " + std::to_string(lineno) + ")");
      cfg.tol[trim(value.substr(0, pos))] = std::stod(value.substr(pos + 1));
    } else if (key == "checks") {
      std::stringstream ss(value);
      std::string id;
      while (std::getline(ss, id, ',')) {
        id = trim(id);
        if (!id.empty()) cfg.checks.push_back(id);
      }
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "fault_inject") {
      cfg.fault_inject = (value == "1" || value == "true");
    } else if (key == "curve") {
      cfg.curve = value;
    } else if (key == "tsamples") {
      cfg.tsamples = std::stoi(value);
    } else if (key == "points") {
      cfg.npoints = std::stoi(value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

int worker_count() {
  if (const char* env = std::getenv("PFAFFGEO_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<Vec> make_grid(const SurfacePatch& patch, const RunConfig& cfg) {
  const int M = patch.M;
  std::vector<int> counts = cfg.grid;
  if (counts.empty()) counts.assign(static_cast<std::size_t>(M), 5);
  if (static_cast<int>(counts.size()) != M)
    throw ConfigError("grid needs one count per surface parameter (" + std::to_string(M) + ")");

  std::vector<std::array<double, 2>> span(static_cast<std::size_t>(M));
  for (int l = 0; l < M; ++l) {
    double lo = patch.box[static_cast<std::size_t>(l)][0];
    double hi = patch.box[static_cast<std::size_t>(l)][1];
    double pad = 0.05 * (hi - lo);
    span[static_cast<std::size_t>(l)] = {lo + pad, hi - pad};
    auto it = cfg.ranges.find(l + 1);
    if (it != cfg.ranges.end()) {
      if (it->second[0] >= it->second[1] || it->second[0] < lo || it->second[1] > hi)
        throw ConfigError("range for axis " + std::to_string(l + 1) + " outside the domain box");
      span[static_cast<std::size_t>(l)] = it->second;
    }
  }

  std::vector<Vec> grid;
  std::vector<int> idx(static_cast<std::size_t>(M), 0);
  while (true) {
    Vec u(M);
    for (int l = 0; l < M; ++l) {
      int n = counts[static_cast<std::size_t>(l)];
      double lo = span[static_cast<std::size_t>(l)][0];
      double hi = span[static_cast<std::size_t>(l)][1];
      u(l) = n == 1 ? 0.5 * (lo + hi)
                    : lo + (hi - lo) * idx[static_cast<std::size_t>(l)] / (n - 1);
    }
    grid.push_back(u);
    int k = M - 1;
    for (; k >= 0; --k) {
      if (++idx[static_cast<std::size_t>(k)] < counts[static_cast<std::size_t>(k)]) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
    if (k < 0) break;
  }
  return grid;
}

int cmd_invariants(const RunConfig& cfg) {
  cfg.validate();
  SurfacePatch patch = catalog(cfg.surface, cfg.params);
  std::vector<Vec> grid = make_grid(patch, cfg);

  struct Row {
    Vec u;
    OperatorReport rep;
    bool degenerate = false;
  };
  std::vector<Row> rows(grid.size());
  OperatorOpts opts;
  parallel_rows(grid.size(), worker_count(), [&](std::size_t i) {
    rows[i].u = grid[i];
    try {
      rows[i].rep = invariants_report(patch, grid[i], opts);
    } catch (const DegeneracyError&) {
      rows[i].degenerate = true;
    } catch (const DomainError&) {
      rows[i].degenerate = true;
    }
  });

  const int N = patch.N, M = patch.M;
  if (cfg.format == "json") {
    Json doc;
    doc["schema"] = "pfaffgeo-report/1";
    doc["command"] = "invariants";
    doc["surface"] = cfg.surface;
    doc["params"] = cfg.params;
    doc["seed"] = cfg.seed;
    doc["rows"] = Json::array();
    for (const Row& r : rows) {
      Json j;
      j["u"] = vec_json(r.u);
      j["degenerate"] = r.degenerate;
      if (!r.degenerate) {
        j["K"] = r.rep.K;
        j["H"] = vec_json(r.rep.H);
        j["h"] = vec_json(r.rep.h);
        j["hstar"] = vec_json(r.rep.hstar);
        j["Rstar_k"] = vec_json(r.rep.Rstar_k);
        j["Rstar"] = r.rep.Rstar;
        j["R"] = vec_json(r.rep.R);
        j["sigma"] = vec_json(r.rep.sigma);
        j["eta"] = r.rep.eta;
        j["support"] = r.rep.support;
        j["flat"] = r.rep.flat;
        j["two_minimal"] = r.rep.two_minimal;
      }
      doc["rows"].push_back(j);
    }
    write_output(cfg, doc.dump(2) + "\n");
  } else {
    std::string text;
    for (int l = 1; l <= M; ++l) text += (l > 1 ? "," : "") + ("u" + std::to_string(l));
    text += ",K";
    for (int k = 1; k <= N; ++k) text += ",H" + std::to_string(k);
    for (int k = 1; k <= N; ++k) text += ",h" + std::to_string(k);
    for (int k = 1; k <= N; ++k) text += ",hstar" + std::to_string(k);
    for (int k = 1; k <= M; ++k) text += ",Rstar" + std::to_string(k);
    text += ",Rstar";
    for (int k = 1; k <= N; ++k) text += ",R" + std::to_string(k);
    for (int k = 1; k <= N; ++k) text += ",sigma" + std::to_string(k);
    text += ",eta,support,flat,two_minimal,degenerate\n";
    for (const Row& r : rows) {
      std::string line;
      for (int l = 0; l < M; ++l) line += (l > 0 ? "," : "") + format_double(r.u(l));
      bool ok = !r.degenerate;
      line += ',';
      line += ok ? format_double(r.rep.K) : "nan";
      append_vec_csv(line, ok ? r.rep.H : Vec::Zero(N), ok);
      append_vec_csv(line, ok ? r.rep.h : Vec::Zero(N), ok);
      append_vec_csv(line, ok ? r.rep.hstar : Vec::Zero(N), ok);
      append_vec_csv(line, ok ? r.rep.Rstar_k : Vec::Zero(M), ok);
      line += ',';
      line += ok ? format_double(r.rep.Rstar) : "nan";
      append_vec_csv(line, ok ? r.rep.R : Vec::Zero(N), ok);
      append_vec_csv(line, ok ? r.rep.sigma : Vec::Zero(N), ok);
      line += ',';
      line += ok ? format_double(r.rep.eta) : "nan";
      line += ',';
      line += ok ? format_double(r.rep.support) : "nan";
      line += ok ? (r.rep.flat ? ",1" : ",0") : ",nan";
      line += ok ? (r.rep.two_minimal ? ",1" : ",0") : ",nan";
      line += r.degenerate ? ",1" : ",0";
      text += line + "\n";
    }
    write_output(cfg, text);
  }
  return 0;
}

int cmd_check(const RunConfig& cfg) {
  cfg.validate();
  SurfacePatch patch = catalog(cfg.surface, cfg.params);
  std::vector<CheckRow> rows = run_checks(patch, cfg.checks, cfg.seed, cfg.npoints,
                                          cfg.fault_inject, cfg.tol, worker_count());
  int failed = 0;
  for (const auto& r : rows)
    if (!r.pass) ++failed;

  if (cfg.format == "json") {
    Json doc;
    doc["schema"] = "pfaffgeo-report/1";
    doc["command"] = "check";
    doc["surface"] = cfg.surface;
    doc["params"] = cfg.params;
    doc["seed"] = cfg.seed;
    doc["fault_inject"] = cfg.fault_inject;
    doc["rows"] = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["check_id"] = r.id;
      j["anchor"] = r.anchor;
      j["max_residual"] = r.max_residual;
      j["tolerance"] = r.tolerance;
      j["pass"] = r.pass;
      doc["rows"].push_back(j);
    }
    doc["summary"] = {{"total", rows.size()},
                      {"passed", rows.size() - static_cast<std::size_t>(failed)},
                      {"failed", failed}};
    write_output(cfg, doc.dump(2) + "\n");
  } else {
    std::string text = "check_id,anchor,max_residual,tolerance,pass\n";
    for (const auto& r : rows)
      text += r.id + "," + csv_quote(r.anchor) + "," + format_double(r.max_residual) + "," +
              format_double(r.tolerance) + "," + (r.pass ? "1" : "0") + "\n";
    write_output(cfg, text);
  }
  return failed > 0 ? 1 : 0;
}

int cmd_curve(const RunConfig& cfg) {
  cfg.validate();
  SurfacePatch patch = catalog(cfg.surface, cfg.params);
  CurveOnSurface curve = curve_fixture(patch, cfg.curve);
  OperatorOpts opts;

  struct Row {
    double t = 0.0, s = 0.0;
    Vec u;
    double rho_quad = 0.0, rho_direct = 0.0, k = 0.0, kstar = 0.0, dR_ds = 0.0,
           rho_matrix_norm = 0.0;
    bool in_domain = true;
  };
  const int n = cfg.tsamples;
  double pad = 0.02 * (curve.t1 - curve.t0);
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    ts[static_cast<std::size_t>(i)] =
        curve.t0 + pad + (curve.t1 - curve.t0 - 2 * pad) * i / (n - 1);

  std::vector<Row> rows(static_cast<std::size_t>(n));
  CurveFrame frame = default_curve_frame(curve, opts);
  parallel_rows(rows.size(), worker_count(), [&](std::size_t i) {
    Row& r = rows[i];
    r.t = ts[i];
    r.u = curve.u(r.t);
    if (!patch.inside(r.u, 1e-3)) {
      r.in_domain = false;
      return;
    }
    try {
      VerticalCurvature vc = vertical_curvature(curve, r.t, opts);
      r.rho_quad = vc.quadratic_form;
      r.rho_direct = vc.direct;
      DnuReport rep = dnu_checks(curve, r.t, opts);
      r.k = rep.k;
      r.kstar = rep.kstar;
      r.dR_ds = rep.dR_ds;
      r.rho_matrix_norm = rho_matrix(curve, frame, r.t, opts).norm();
    } catch (const std::exception&) {
      r.in_domain = false;
    }
  });
  // cumulative arc length over the sample sequence; frozen across samples
  // that left the domain
  double s = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].in_domain && rows[i - 1].in_domain) {
      double sp0 = curve_velocity(curve, ts[i - 1]).norm();
      double sp1 = curve_velocity(curve, ts[i]).norm();
      s += 0.5 * (sp0 + sp1) * (ts[i] - ts[i - 1]);
    }
    rows[i].s = s;
  }

  if (cfg.format == "json") {
    Json doc;
    doc["schema"] = "pfaffgeo-report/1";
    doc["command"] = "curve";
    doc["surface"] = cfg.surface;
    doc["params"] = cfg.params;
    doc["curve"] = cfg.curve;
    doc["seed"] = cfg.seed;
    doc["rows"] = Json::array();
    for (const Row& r : rows) {
      Json j;
      j["t"] = r.t;
      j["s"] = r.s;
      j["u"] = vec_json(r.u);
      j["in_domain"] = r.in_domain;
      if (r.in_domain) {
        j["rho_star"] = r.rho_quad;
        j["rho_star_direct"] = r.rho_direct;
        j["k"] = r.k;
        j["kstar"] = r.kstar;
        j["dR_ds"] = r.dR_ds;
        j["rho_matrix_norm"] = r.rho_matrix_norm;
      }
      doc["rows"].push_back(j);
    }
    write_output(cfg, doc.dump(2) + "\n");
  } else {
    std::string text = "t,s";
    for (int l = 1; l <= patch.M; ++l) text += ",u" + std::to_string(l);
    text += ",rho_star,rho_star_direct,k,kstar,dR_ds,rho_matrix_norm,in_domain\n";
    for (const Row& r : rows) {
      std::string line = format_double(r.t) + "," + format_double(r.s);
      for (int l = 0; l < patch.M; ++l) line += "," + format_double(r.u(l));
      bool ok = r.in_domain;
      for (double vcol : {r.rho_quad, r.rho_direct, r.k, r.kstar, r.dR_ds, r.rho_matrix_norm}) {
        line += ',';
        line += ok ? format_double(vcol) : "nan";
      }
      line += ok ? ",1" : ",0";
      text += line + "\n";
    }
    write_output(cfg, text);
  }
  return 0;
}

int cmd_catalog(const RunConfig& cfg) {
  std::string text = "surfaces:\n";
  for (const auto& [name, arity] : catalog_arities()) text += "  " + name + " " + arity + "\n";
  text +=
      "curves:\n"
      "  line (hyperplane), circle[:a], great_circle (hypersphere),\n"
      "  torus_outer (torus3), poly:c10,c11,..;c20,..\n"
      "checks:\n";
  for (const auto& d : identity_checks()) text += "  " + d.id + "\n";
  write_output(cfg, text);
  return 0;
}

}  // namespace pfaffgeo
