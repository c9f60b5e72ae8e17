#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string bin() {
  const char* b = std::getenv("PFAFFGEO_BIN");
  REQUIRE(b != nullptr);
  return b;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = bin() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("catalog lists the fixtures") {
  RunResult r = run("catalog");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("hypersphere") != std::string::npos);
  CHECK(r.out.find("torus3") != std::string::npos);
  CHECK(r.out.find("commutator") != std::string::npos);
}

TEST_CASE("invariants on the plane report flatness") {
  RunResult r = run("invariants --surface hyperplane --params 3 --grid 3,3 --format csv");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);  // header
  CHECK(line.find("K") != std::string::npos);
  int rows = 0;
  while (std::getline(ss, line)) {
    ++rows;
    CHECK(line.find(",1,1,0") != std::string::npos);  // flat, two_minimal, not degenerate
  }
  CHECK(rows == 9);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
  for (const std::string& cmd :
       {std::string("invariants --surface hypersphere --params 4,1 --grid 3,3,3 --seed 9"),
        std::string("check --surface torus3 --params 2,0.5 --seed 9 --format csv"),
        std::string("curve --surface torus3 --params 2,0.5 --curve torus_outer --tsamples 12")}) {
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("json reports carry the schema tag") {
  RunResult r = run("invariants --surface hyperplane --params 3 --grid 2,2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"schema\": \"pfaffgeo-report/1\"") != std::string::npos);
}

TEST_CASE("check command exit codes") {
  RunResult ok = run("check --surface hyperplane --params 3 --points 4");
  CHECK(ok.exit_code == 0);
  RunResult fault =
      run("check --surface torus3 --params 2,0.5 --points 4 --checks commutator --fault-inject");
  CHECK(fault.exit_code == 1);
  RunResult bad = run("check --surface doughnut --params 1");
  CHECK(bad.exit_code == 2);
  RunResult badcheck = run("check --surface hyperplane --params 3 --checks no_such");
  CHECK(badcheck.exit_code == 2);
  RunResult badformat = run("check --surface hyperplane --params 3 --format yaml");
  CHECK(badformat.exit_code == 2);
}

TEST_CASE("torus K column flips sign across the inner ring") {
  RunResult r = run(
      "invariants --surface torus3 --params 2,0.5 --grid 11,11 --format csv");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  int positive = 0, negative = 0;
  while (std::getline(ss, line)) {
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    auto c3 = line.find(',', c2 + 1);
    double K = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
    (K > 0 ? positive : negative)++;
  }
  CHECK(positive > 0);
  CHECK(negative > 0);
}

TEST_CASE("curve report on a straight line is curvature-free") {
  RunResult r = run(
      "curve --surface hyperplane --params 3 --curve line --tsamples 8 --format csv");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  while (std::getline(ss, line)) {
    std::stringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() >= 10);
    CHECK(std::abs(std::stod(cells[4])) < 1e-8);  // rho_star
    CHECK(std::abs(std::stod(cells[6])) < 1e-7);  // k
    CHECK(cells.back() == "1");                   // in_domain
  }
}

TEST_CASE("config files merge under the flags") {
  std::string path = "/tmp/pfaffgeo_cfg_test.cfg";
  {
    std::ofstream f(path);
    f << "# comment\n"
      << "surface = torus3\n"
      << "params = 2, 0.5\n"
      << "checks = commutator,flat_space\n"
      << "tol = commutator: 1e-2\n"
      << "seed = 4\n"
      << "format = csv\n";
  }
  // flags override: drop flat_space (not applicable to torus anyway) via --checks
  RunResult r = run("check --config " + path + " --checks commutator --points 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("commutator") != std::string::npos);
  CHECK(r.out.find("0.01") != std::string::npos);  // overridden tolerance from the file

  RunResult bad = run("check --config /tmp/does_not_exist.cfg");
  CHECK(bad.exit_code == 2);
  {
    std::ofstream f(path);
    f << "maxdepth = 3\n";
  }
  CHECK(run("check --config " + path).exit_code == 2);
}

TEST_CASE("curves leaving the domain are flagged, not fatal") {
  // a parameter-space segment that exits the torus box
  RunResult r = run(
      "curve --surface torus3 --params 2,0.5 --curve 'poly:3.0,4.0;0,0' --tsamples 10 "
      "--format csv");
  CHECK(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  int inside = 0, outside = 0;
  while (std::getline(ss, line)) {
    if (line.size() >= 2 && line.substr(line.size() - 2) == ",0")
      ++outside;
    else
      ++inside;
  }
  CHECK(inside > 0);
  CHECK(outside > 0);
}

TEST_CASE("worker cap does not change the report") {
  std::string cmd = "check --surface hypersphere --params 3,1 --seed 12 --format csv";
  std::string one = "PFAFFGEO_THREADS=1 " + bin() + " " + cmd + " 2>/dev/null";
  std::string four = "PFAFFGEO_THREADS=4 " + bin() + " " + cmd + " 2>/dev/null";
  auto capture = [](const std::string& full) {
    FILE* pipe = popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
  };
  CHECK(capture(one) == capture(four));
}

TEST_CASE("sphere invariants grid reproduces the definitional curvature sums") {
  RunResult r = run("invariants --surface hypersphere --params 4,1 --grid 5,5,5");
  CHECK(r.exit_code == 0);
  // every row carries R* = (N-1)^2 = 9 and R*_k = 3
  std::stringstream ss(r.out);
  std::string line;
  int hits = 0;
  while (std::getline(ss, line)) {
    auto pos = line.find("\"Rstar\": ");
    if (pos == std::string::npos) continue;
    double v = std::stod(line.substr(pos + 9));
    CHECK(std::abs(v - 9.0) < 1e-4);
    ++hits;
  }
  CHECK(hits == 125);
}

TEST_CASE("out-of-box ranges are rejected") {
  RunResult r = run("invariants --surface hyperplane --params 3 --range 1,-5,5");
  CHECK(r.exit_code == 2);
  RunResult r2 = run("invariants --surface hyperplane --params 3 --grid 2");
  CHECK(r2.exit_code == 2);
}
