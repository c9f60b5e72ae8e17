// Third-fundamental-form calculus: the inverse connection against the normal
// coframe, tilde Pfaff derivatives, tilde connections, and the support
// identity for the third-form Beltrami operator on the position vector.
#pragma once

#include "pfaffgeo/operators.hpp"

namespace pfaffgeo {

struct SphericalData {
  ConnectionData conn;
  Mat q1;          // M x M, q1(m-1, j-1) solves sum_j q1_mj q_Njs = delta_ms
  NdTable qtilde;  // N x N x M
  Vec Atilde;      // length N, pair sums of rot(qtilde)
  Vec Rtilde;      // length N
  double w = 0.0;  // support <x, e_N>

  double qtv(int i, int j, int l) const { return l <= conn.M ? qtilde(i, j, l) : 0.0; }
  double Qtv(int l, int k, int m) const { return qtv(l, k, m) - qtv(m, k, l); }
};

// Requires an elliptic point (invertible shape table).
SphericalData spherical_at(const SurfacePatch& patch, const Vec& u,
                           const OperatorOpts& opts = {});

// Tilde gradient: contraction of the Pfaff gradient with the inverse
// connection; length M.
Vec tilde_gradient(const ScalarField& f, const SphericalData& sph, const Vec& u,
                   const OperatorOpts& opts = {});

// Tilde derivative of an ambient-vector field along tangential index j.
Vec tilde_nabla_ambient(const AmbField& F, int j, const SphericalData& sph, const Vec& u,
                        const OperatorOpts& opts = {});

// |<Delta2_III x, e_N> + (N-1) trace(q1)|, left side assembled from tilde
// derivatives of the position field.
double third_form_position_residual(const SurfacePatch& patch, const Vec& u,
                                    const OperatorOpts& opts = {});

}  // namespace pfaffgeo
