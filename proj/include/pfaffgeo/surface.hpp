// Parametric embeddings u in R^M -> x in R^N (M = N-1) with a differentiation
// engine supplying partials up to order 3, plus the fixture catalog and the
// ambient-motion / reparametrization wrappers used by the invariance tests.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "pfaffgeo/core.hpp"
#include "pfaffgeo/jet.hpp"

namespace pfaffgeo {

struct SurfacePatch {
  int N = 0;  // ambient dimension, >= 3
  int M = 0;  // intrinsic dimension, N-1
  // Jet evaluator (closed arithmetic); exact first and second partials.
  std::function<JetVec(const JetVec&)> embed_jet;
  // Plain evaluator; falls back to the jet path when absent.
  std::function<Vec(const Vec&)> embed;
  std::vector<std::array<double, 2>> box;  // per-coordinate open intervals
  std::string name;
  std::vector<double> params;

  Vec eval(const Vec& u) const;
  bool inside(const Vec& u, double margin) const;
  Vec center() const;
  Vec sample_interior(Rng& rng, double rel_margin = 0.12) const;
};

// Partials of the embedding at u: x (N), d1 (N x M), d2 (per ambient
// coordinate, M x M symmetric), d3 (N x M x M x M fully symmetric).
struct Jet3 {
  Vec x;
  Mat d1;
  std::vector<Mat> d2;
  NdTable d3;
  int order = 1;
};

// Forward-AD partials (finite differences only for order 3).
Jet3 jet(const SurfacePatch& patch, const Vec& u, int order);
// Pure central-difference path, step cbrt(eps)*max(1,|u_l|). Used for
// black-box embeddings and as the engine cross-check.
Jet3 jet_fd(const SurfacePatch& patch, const Vec& u, int order);

// Fixtures: hyperplane [N]; hypersphere [N, r]; ellipsoid [N, a_1..a_N];
// torus3 [R, r]; graph [N, a, b].
SurfacePatch catalog(const std::string& name, const std::vector<double>& params);
std::vector<std::pair<std::string, std::string>> catalog_arities();

// Same patch pushed through the rigid motion x -> Q x + shift (Q proper
// orthogonal N x N).
SurfacePatch transformed(const SurfacePatch& patch, const Mat& Q, const Vec& shift);

struct ReparametrizedPatch {
  SurfacePatch patch;                    // new parameters v, box = unit box
  std::function<Vec(const Vec&)> to_base;  // v -> u of the base patch
};

// Random diffeomorphism with lower-triangular, positive-diagonal Jacobian;
// preserves the ordered Gram-Schmidt frame at corresponding points.
ReparametrizedPatch reparametrized_triangular(const SurfacePatch& patch, Rng& rng);
// Random unrestricted diffeomorphism; mixes tangent directions.
ReparametrizedPatch reparametrized_general(const SurfacePatch& patch, Rng& rng);

}  // namespace pfaffgeo
