#include <doctest.h>

#include "pfaffgeo/connection.hpp"

using namespace pfaffgeo;

TEST_CASE("flat space has vanishing connection data") {
  SurfacePatch p = catalog("hyperplane", {4});
  Rng rng(21);
  for (int i = 0; i < 5; ++i) {
    ConnectionData c = connection_at(p, p.sample_interior(rng));
    CHECK(c.q.max_abs() < 1e-10);
    CHECK(c.Rcurv.max_abs() < 1e-10);
    CHECK(c.kappa.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(c.A.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(c.R.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("unit hypersphere shape table is the identity up to one global sign") {
  for (int N : {3, 4, 5}) {
    SurfacePatch p = catalog("hypersphere", {static_cast<double>(N), 1.0});
    Rng rng(22);
    for (int i = 0; i < 6; ++i) {
      ConnectionData c = connection_at(p, p.sample_interior(rng));
      double plus = (c.kappa + Mat::Identity(p.M, p.M)).cwiseAbs().maxCoeff();
      double minus = (c.kappa - Mat::Identity(p.M, p.M)).cwiseAbs().maxCoeff();
      CHECK(std::min(plus, minus) < 1e-6);
    }
  }
}

TEST_CASE("torus shape eigenvalues match the classical principal curvatures") {
  const double R = 2.0, r = 0.5;
  SurfacePatch p = catalog("torus3", {R, r});
  Rng rng(23);
  for (int i = 0; i < 12; ++i) {
    Vec u = p.sample_interior(rng);
    ConnectionData c = connection_at(p, u);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (c.kappa + c.kappa.transpose()));
    Vec got = es.eigenvalues();
    double k1 = std::cos(u(1)) / (R + r * std::cos(u(1))), k2 = 1.0 / r;
    // one global sign covers the orientation
    Vec a(2), b(2);
    a << std::min(k1, k2), std::max(k1, k2);
    b << std::min(-k1, -k2), std::max(-k1, -k2);
    double direct = (got - a).cwiseAbs().maxCoeff();
    double flipped = (got - b).cwiseAbs().maxCoeff();
    CHECK(std::min(direct, flipped) < 1e-5);
  }
}

TEST_CASE("the two curvature routes agree and vanish on the plane") {
  SurfacePatch plane = catalog("hyperplane", {3});
  auto [Pa, Pb] = curvature_two_ways(plane, plane.center());
  CHECK(Pa.max_abs() < 1e-9);
  CHECK(Pb.max_abs() < 1e-9);

  SurfacePatch p = catalog("torus3", {2, 0.5});
  Rng rng(24);
  for (int i = 0; i < 10; ++i) {
    auto [Ra, Rb] = curvature_two_ways(p, p.sample_interior(rng));
    CHECK((Ra - Rb).max_abs() < 1e-4);
  }
}

TEST_CASE("unit hypersphere curvature contracts to the Q table") {
  SurfacePatch p = catalog("hypersphere", {4, 1});
  Rng rng(25);
  for (int i = 0; i < 5; ++i) {
    Vec u = p.sample_interior(rng);
    ConnectionData c = connection_at(p, u);
    auto [Ra, Rb] = curvature_two_ways(p, u);
    for (int idx = 1; idx <= 4; ++idx)
      for (int m = 1; m <= 3; ++m)
        for (int l = 1; l <= 3; ++l)
          CHECK(std::abs(Ra(idx, 4, m, l) - c.Qv(m, idx, l)) < 1e-5);
  }
}

TEST_CASE("connection solve reproduces the coordinate-direction coefficients") {
  SurfacePatch p = catalog("graph", {4, 0.4, 0.7});
  Rng rng(26);
  Vec u = p.sample_interior(rng);
  ConnectionData c = connection_at(p, u);
  // Gamma_ijl = sum_m q_ijm b_ml must hold after the antisymmetry projection
  for (int i = 1; i <= c.N; ++i)
    for (int j = 1; j <= c.N; ++j)
      for (int l = 1; l <= c.M; ++l) {
        double acc = 0.0;
        for (int m = 1; m <= c.M; ++m) acc += c.q(i, j, m) * c.fr.b(m - 1, l - 1);
        CHECK(std::abs(acc - c.gamma(i, j, l)) < 1e-8);
      }
}

TEST_CASE("bracketed covariant derivative on frame components") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  Rng rng(27);
  Vec u = p.sample_interior(rng);
  ConnectionData c = connection_at(p, u);

  // components of a constant ambient vector: covariant derivative vanishes
  Vec cvec = rng.normal_vec(3);
  TensorField tconst{{3}, [&p, cvec](const Vec& uu) {
                       Vec y = frame_at(p, uu).e * cvec;
                       NdTable t({3});
                       for (int k = 1; k <= 3; ++k) t(k) = y(k - 1);
                       return t;
                     }};
  for (int l = 1; l <= 2; ++l) {
    NdTable d = semicolon_derivative(tconst, {1}, l, p, c, u, 1e-4);
    CHECK(d.max_abs() < 1e-6);
  }

  // components of the position vector: the derivative is the Kronecker delta
  TensorField tpos{{3}, [&p](const Vec& uu) {
                     FrameData fr = frame_at(p, uu);
                     Vec y = fr.e * fr.x;
                     NdTable t({3});
                     for (int k = 1; k <= 3; ++k) t(k) = y(k - 1);
                     return t;
                   }};
  for (int l = 1; l <= 2; ++l) {
    NdTable d = semicolon_derivative(tpos, {1}, l, p, c, u, 1e-4);
    for (int k = 1; k <= 3; ++k)
      CHECK(std::abs(d(k) - (k == l ? 1.0 : 0.0)) < 1e-5);
  }

  CHECK_THROWS_AS(semicolon_derivative(tpos, {1}, 3, p, c, u, 1e-4), ConfigError);
  CHECK_THROWS_AS(semicolon_derivative(tpos, {2}, 1, p, c, u, 1e-4), ConfigError);
}

TEST_CASE("theta on the coframe forms reproduces the rotated connection") {
  SurfacePatch p = catalog("hypersphere", {3, 1});
  Rng rng(28);
  Vec u = p.sample_interior(rng);
  ConnectionData c = connection_at(p, u);
  for (int j = 1; j <= 3; ++j) {
    Vec delta = Vec::Zero(3);
    delta(j - 1) = 1.0;
    CoeffField form = [delta](const Vec&) { return delta; };
    for (int l = 1; l <= 2; ++l)
      for (int m = l + 1; m <= 2; ++m)
        CHECK(std::abs(theta2(form, l, m, p, c, u, 1e-4) - c.Qv(l, j, m)) < 1e-6);
  }
}

TEST_CASE("connections are invariant under proper rigid motions") {
  SurfacePatch p = catalog("ellipsoid", {3, 1.0, 1.4, 0.7});
  Rng rng(29);
  Mat Q = rng.rotation(3);
  Vec shift = rng.normal_vec(3);
  SurfacePatch moved = transformed(p, Q, shift);
  for (int i = 0; i < 5; ++i) {
    Vec u = p.sample_interior(rng);
    ConnectionData c0 = connection_at(p, u);
    ConnectionData c1 = connection_at(moved, u);
    CHECK((c0.q - c1.q).max_abs() < 1e-6);
    CHECK((c0.R - c1.R).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((c0.kappa - c1.kappa).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("triangular reparametrization preserves the connection at corresponding points") {
  SurfacePatch p = catalog("torus3", {2, 0.5});
  Rng rng(30);
  ReparametrizedPatch rp = reparametrized_triangular(p, rng);
  for (int i = 0; i < 5; ++i) {
    Vec vpt = rp.patch.sample_interior(rng, 0.2);
    ConnectionData c0 = connection_at(p, rp.to_base(vpt));
    ConnectionData c1 = connection_at(rp.patch, vpt);
    CHECK((c0.q - c1.q).max_abs() < 1e-5);
    CHECK((c0.R - c1.R).cwiseAbs().maxCoeff() < 1e-5);
  }
}
