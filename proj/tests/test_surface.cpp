#include <doctest.h>

#include "pfaffgeo/surface.hpp"

using namespace pfaffgeo;

TEST_CASE("plane jet is affine") {
  SurfacePatch p = catalog("hyperplane", {3});
  Vec u(2);
  u << 0.3, -0.4;
  Jet3 J = jet(p, u, 3);
  Mat d1(3, 2);
  d1 << 1, 0, 0, 1, 0, 0;
  CHECK((J.d1 - d1).cwiseAbs().maxCoeff() == 0.0);
  for (const Mat& h : J.d2) CHECK(h.cwiseAbs().maxCoeff() == 0.0);
  CHECK(J.d3.max_abs() < 1e-9);
}

TEST_CASE("unit sphere equatorial point lands on the first axis") {
  SurfacePatch p = catalog("hypersphere", {3, 1});
  Vec u(2);
  u << M_PI / 2, 1e-9;  // azimuth inside the open box by construction of tests
  // the box excludes small azimuth; evaluate directly instead of via jet
  Vec x = p.eval(u);
  CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(x(1)) < 1e-8);
  CHECK(std::abs(x(2)) < 1e-12);
  CHECK(x.norm() == doctest::Approx(1.0));
}

TEST_CASE("torus second partials match the closed forms") {
  const double R = 2.0, r = 0.5;
  SurfacePatch p = catalog("torus3", {R, r});
  Vec u(2);
  u << 1.1, 0.7;
  Jet3 J = jet(p, u, 2);
  const double cu = std::cos(u(0)), su = std::sin(u(0));
  const double cv = std::cos(u(1)), sv = std::sin(u(1));
  // closed-form partials of ((R+r cos v) cos u, (R+r cos v) sin u, r sin v)
  Vec xuu(3), xuv(3), xvv(3);
  xuu << -(R + r * cv) * cu, -(R + r * cv) * su, 0;
  xuv << r * sv * su, -r * sv * cu, 0;
  xvv << -r * cv * cu, -r * cv * su, -r * sv;
  for (int c = 0; c < 3; ++c) {
    CHECK(J.d2[c](0, 0) == doctest::Approx(xuu(c)).epsilon(1e-7));
    CHECK(J.d2[c](0, 1) == doctest::Approx(xuv(c)).epsilon(1e-7));
    CHECK(J.d2[c](1, 0) == doctest::Approx(xuv(c)).epsilon(1e-7));
    CHECK(J.d2[c](1, 1) == doctest::Approx(xvv(c)).epsilon(1e-7));
  }
}

TEST_CASE("forward jets agree with central differences on the catalog") {
  std::vector<std::pair<std::string, std::vector<double>>> fixtures = {
      {"hyperplane", {3}},          {"hypersphere", {4, 1.3}}, {"torus3", {2, 0.5}},
      {"ellipsoid", {3, 1, 2, 0.7}}, {"graph", {3, 0.4, 0.7}},
  };
  for (const auto& [name, params] : fixtures) {
    SurfacePatch p = catalog(name, params);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
      Vec u = p.sample_interior(rng);
      Jet3 ad = jet(p, u, 2);
      Jet3 fd = jet_fd(p, u, 1);
      double scale = 1.0 + ad.d1.cwiseAbs().maxCoeff();
      CHECK((ad.d1 - fd.d1).cwiseAbs().maxCoeff() / scale < 1e-6);
      // symmetric slots
      for (const Mat& h : ad.d2)
        CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("regularity holds over sampled catalog points") {
  for (const auto& [name, params] : std::vector<std::pair<std::string, std::vector<double>>>{
           {"hypersphere", {5, 1}}, {"torus3", {2, 0.5}}, {"graph", {4, 0.3, 0.8}}}) {
    SurfacePatch p = catalog(name, params);
    Rng rng(6);
    for (int i = 0; i < 40; ++i) {
      Jet3 J = jet(p, p.sample_interior(rng), 1);
      Eigen::JacobiSVD<Mat> svd(J.d1);
      CHECK(svd.singularValues()(p.M - 1) >= 1e-8);
    }
  }
}

TEST_CASE("third-order jets are symmetric in the parameter slots") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  Vec u(2);
  u << 2.0, -1.0;
  Jet3 J = jet(p, u, 3);
  for (int c = 1; c <= 3; ++c)
    for (int l = 1; l <= 2; ++l)
      for (int m = 1; m <= 2; ++m)
        for (int k = 1; k <= 2; ++k) {
          CHECK(J.d3(c, l, m, k) == doctest::Approx(J.d3(c, m, l, k)).epsilon(1e-8));
          CHECK(J.d3(c, l, m, k) == doctest::Approx(J.d3(c, k, m, l)).epsilon(1e-8));
        }
  // spot value: d^3/du^3 of (R + r cos v) cos u = (R + r cos v) sin u
  double expect = (2.0 + 0.5 * std::cos(u(1))) * std::sin(u(0));
  CHECK(J.d3(1, 1, 1, 1) == doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("domain margin and catalog errors") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  Vec edge(2);
  edge << p.box[0][0], 0.0;  // on the boundary
  CHECK_THROWS_AS(jet(p, edge, 1), DomainError);
  CHECK_THROWS_AS(catalog("moebius", {1}), ConfigError);
  CHECK_THROWS_AS(catalog("hypersphere", {4}), ConfigError);
  CHECK_THROWS_AS(catalog("hypersphere", {2, 1}), ConfigError);
  CHECK_THROWS_AS(catalog("torus3", {0.5, 2}), ConfigError);
  CHECK_THROWS_AS(catalog("ellipsoid", {3, 1, 1}), ConfigError);
  CHECK_THROWS_AS(jet(p, p.center(), 4), ConfigError);
}

TEST_CASE("non-finite embeddings are reported") {
  SurfacePatch p;
  p.N = 3;
  p.M = 2;
  p.box = {{-1, 1}, {-1, 1}};
  p.name = "bad";
  p.embed = [](const Vec& u) {
    Vec x(3);
    x << u(0), u(1), std::log(-1.0);
    return x;
  };
  CHECK_THROWS_AS(p.eval(p.center()), EvaluationError);
}

TEST_CASE("rigid motion wrapper composes exactly") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  Rng rng(9);
  Mat Q = rng.rotation(3);
  Vec shift = rng.normal_vec(3);
  SurfacePatch moved = transformed(p, Q, shift);
  Vec u = p.sample_interior(rng);
  CHECK(((Q * p.eval(u) + shift) - moved.eval(u)).norm() < 1e-14);
  Jet3 a = jet(p, u, 1), b = jet(moved, u, 1);
  CHECK((Q * a.d1 - b.d1).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("reparametrization wrappers stay inside the base box") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  Rng rng(10);
  ReparametrizedPatch rp = reparametrized_triangular(p, rng);
  ReparametrizedPatch rg = reparametrized_general(p, rng);
  for (int i = 0; i < 50; ++i) {
    Vec vt = rp.patch.sample_interior(rng, 0.0);
    CHECK(p.inside(rp.to_base(vt), 1e-6));
    CHECK((rp.patch.eval(vt) - p.eval(rp.to_base(vt))).norm() < 1e-14);
    Vec vg = rg.patch.sample_interior(rng, 0.0);
    CHECK(p.inside(rg.to_base(vg), 1e-6));
  }
}
