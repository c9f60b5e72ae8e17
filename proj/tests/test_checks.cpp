#include <doctest.h>

#include "pfaffgeo/checks.hpp"

using namespace pfaffgeo;

TEST_CASE("full registry passes on a small sphere run") {
  SurfacePatch p = catalog("hypersphere", {3, 1});
  auto rows = run_checks(p, {}, 11, 4, false, {}, 2);
  CHECK(rows.size() == identity_checks().size() - 1);  // flat-only check skipped
  for (const auto& r : rows) {
    INFO(r.id, " residual ", r.max_residual, " tol ", r.tolerance);
    CHECK(r.pass);
  }
}

TEST_CASE("plane run includes the flat check and skips elliptic-only ones") {
  SurfacePatch p = catalog("hyperplane", {3});
  auto rows = run_checks(p, {}, 11, 4, false, {}, 2);
  bool has_flat = false, has_third = false;
  for (const auto& r : rows) {
    if (r.id == "flat_space") has_flat = true;
    if (r.id == "third_form_support") has_third = true;
    CHECK(r.pass);
  }
  CHECK(has_flat);
  CHECK_FALSE(has_third);
}

TEST_CASE("fault injection breaks the commutator identity") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  auto rows = run_checks(p, {"commutator"}, 11, 4, true, {}, 1);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].pass);
  CHECK(rows[0].max_residual > 1e-4);
}

TEST_CASE("selection, overrides and unknown ids") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  CHECK_THROWS_AS(run_checks(p, {"no_such_check"}, 1, 2, false, {}, 1), ConfigError);
  CHECK_THROWS_AS(run_checks(p, {}, 1, 2, false, {{"bogus", 1.0}}, 1), ConfigError);
  auto rows = run_checks(p, {"commutator"}, 11, 3, false, {{"commutator", 1e-20}}, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].tolerance == 1e-20);
  CHECK_FALSE(rows[0].pass);  // impossible tolerance must be honored
}

TEST_CASE("runs are deterministic for a fixed seed") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  auto a = run_checks(p, {"commutator", "curvature_two_routes"}, 77, 4, false, {}, 2);
  auto b = run_checks(p, {"commutator", "curvature_two_routes"}, 77, 4, false, {}, 1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].max_residual == b[i].max_residual);
  }
}

TEST_CASE("registry is green on every catalog fixture") {
  for (const auto& [name, params] : std::vector<std::pair<std::string, std::vector<double>>>{
           {"hyperplane", {4}},
           {"hypersphere", {4, 1}},
           {"torus3", {2, 0.5}},
           {"ellipsoid", {3, 1.0, 1.3, 0.9}},
           {"graph", {4, 0.3, 0.8}}}) {
    SurfacePatch p = catalog(name, params);
    for (const auto& r : run_checks(p, {}, 5, 3, false, {}, 4)) {
      INFO(name, " / ", r.id, " residual ", r.max_residual, " tol ", r.tolerance);
      CHECK(r.pass);
    }
  }
}
