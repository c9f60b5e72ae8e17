// Connection coefficients against the moving frame, curvature (two routes),
// bracketed covariant (semicolon) derivatives, and the Theta operators on
// vector / one-form coefficient fields.
#pragma once

#include "pfaffgeo/frames.hpp"

namespace pfaffgeo {

struct ConnectionData {
  FrameData fr;
  NdTable q;      // N x N x M, antisymmetric in the first two slots
  NdTable gamma;  // N x N x M, from frame-field coordinate derivatives
  Mat kappa;      // M x M shape table, kappa_km = q(k, N, m)
  Vec A;          // length N
  Vec R;          // length N
  NdTable Rcurv;  // N x N x M x M, algebraic curvature route

  int N = 0, M = 0;

  // q with the form index extended by zero at N (the normal coframe
  // component vanishes, so no connection form has one).
  double qv(int i, int j, int m) const { return m <= M ? q(i, j, m) : 0.0; }
  double Qv(int l, int k, int m) const { return qv(l, k, m) - qv(m, k, l); }
  double Qstar(int l, int k, int m) const { return qv(l, k, m) + qv(m, k, l); }
};

struct ConnectionOpts {
  double frame_step = 1e-5;   // central-difference step for frame fields
  double nested_step = 1e-4;  // step when differentiating connection data
};

ConnectionData connection_at(const SurfacePatch& patch, const Vec& u,
                             const ConnectionOpts& opts = {});

// (i,j,m,l) = grad_l q_ijm over tangential l, by central differences of the
// connection field.
NdTable connection_gradient(const SurfacePatch& patch, const Vec& u,
                            const ConnectionData& conn, const ConnectionOpts& opts = {});

// Curvature from the derivative formula (first) and from the quadratic
// connection formula (second); both N x N x M x M over the form slots.
std::pair<NdTable, NdTable> curvature_two_ways(const SurfacePatch& patch, const Vec& u,
                                               const ConnectionOpts& opts = {});

// Field of frame-component coefficients (length-N values).
using CoeffField = std::function<Vec(const Vec&)>;

// Row k = Pfaff derivative grad_k of each coefficient, k = 1..M; row N zero.
Mat nabla_coeffs(const CoeffField& Y, const FrameData& fr, const Vec& u, double h);

// Tensor-valued field together with its index extents.
struct TensorField {
  std::vector<int> dims;
  std::function<NdTable(const Vec&)> eval;
};

// Bracketed covariant derivative: grad_l t minus one connection contraction
// per bracketed slot (1-based slot positions); l must be tangential.
NdTable semicolon_derivative(const TensorField& t, const std::vector<int>& bracket_slots,
                             int l, const SurfacePatch& patch, const ConnectionData& conn,
                             const Vec& u, double h);

// Theta on precomputed data: nablaY(k,j) = grad_k Y_j.
double theta_from_tables(const Vec& Y, const Mat& nablaY, const ConnectionData& conn, int l,
                         int m);

// Theta^(1) on a frame-component vector field / Theta^(2) on a one-form
// coefficient field (the same formula; kept separate per their contracts).
double theta1(const CoeffField& Y, int l, int m, const SurfacePatch& patch,
              const ConnectionData& conn, const Vec& u, double h);
double theta2(const CoeffField& a, int l, int m, const SurfacePatch& patch,
              const ConnectionData& conn, const Vec& u, double h);

}  // namespace pfaffgeo
