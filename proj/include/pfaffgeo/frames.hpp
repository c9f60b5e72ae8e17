// Adapted orthonormal frame construction (tangential Gram-Schmidt in
// parameter order, normal completing det(e)=+1) and Pfaff differentiation of
// scalar / ambient-vector fields against the frame coframe.
#pragma once

#include <functional>

#include "pfaffgeo/surface.hpp"

namespace pfaffgeo {

struct FrameData {
  int N = 0, M = 0;
  Vec x;     // base point
  Mat e;     // N x N, row k-1 is frame vector k in ambient coordinates
  Mat b;     // N x M, b_kl = <e_k, d_l x>; row N vanishes
  Mat g;     // M x M metric, g = B^T B with B the tangential block of b
  Mat Binv;  // inverse of the tangential M x M block

  Vec vec(int k) const { return e.row(k - 1); }  // 1-based
  // Pfaff gradient from coordinate partials: grad = B^{-T} d, padded with a
  // zero normal component.
  Vec gradient_from_partials(const Vec& partials) const;
};

FrameData frame_at(const SurfacePatch& patch, const Vec& u);

// Scalar field on the patch domain.
struct ScalarField {
  std::function<double(const Vec&)> f;
  double operator()(const Vec& u) const { return f(u); }
};

// Ambient-vector-valued field (values in R^N).
using AmbField = std::function<Vec(const Vec&)>;

// Central-difference coordinate partials of f; step h*max(1,|u_l|).
Vec pfaff_partials(const ScalarField& f, const Vec& u, double h);

// (grad_1 f .. grad_M f, 0); the normal component is zero since the normal
// coframe component vanishes identically.
Vec pfaff_gradient(const ScalarField& f, const FrameData& fr, const Vec& u, double h);
Vec pfaff_gradient(const ScalarField& f, const SurfacePatch& patch, const Vec& u);

// Pfaff derivatives of an ambient-vector field, componentwise; entry k-1
// holds grad_k F (entry N-1 is the zero vector).
std::vector<Vec> nabla_ambient(const AmbField& F, const FrameData& fr, const Vec& u, double h);

// Default scalar-field differentiation step (cbrt of machine epsilon).
double default_field_step();

}  // namespace pfaffgeo
