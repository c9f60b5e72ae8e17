// Curve calculus on a patch: arc-length rates, vertical curvature, direction
// sums of quadratic form invariants, transported-frame rotation rates, and
// the D-operator checks along curves.
#pragma once

#include "pfaffgeo/operators.hpp"

namespace pfaffgeo {

struct CurveOnSurface {
  const SurfacePatch* patch = nullptr;
  std::function<Vec(double)> u_of_t;
  double t0 = 0.0, t1 = 1.0;

  Vec u(double t) const { return u_of_t(t); }
  double fd_step() const { return 1e-5 * (t1 - t0); }
};

// dx/dt through the chain rule, and the unit tangent.
Vec curve_velocity(const CurveOnSurface& c, double t);
Vec curve_unit_tangent(const CurveOnSurface& c, double t);
// coframe rates <e_k, dx/ds>, length N (normal entry ~ 0)
Vec coframe_rates(const CurveOnSurface& c, const FrameData& fr, double t);

// Vertical curvature both ways: the shape-table quadratic form on the
// direction, and the direct <d tangent/ds, e_N>.
struct VerticalCurvature {
  double quadratic_form = 0.0;
  double direct = 0.0;
};
VerticalCurvature vertical_curvature(const CurveOnSurface& c, double t,
                                     const OperatorOpts& opts = {});

// Sum of vertical curvatures over a random orthonormal direction set vs the
// shape-table trace, plus the quadratic-form combination sums.
struct DirectionSumReport {
  double trace_residual = 0.0;      // |sum_i 1/rho*_i - trace kappa|
  double set_independence = 0.0;    // |sum(set1) - sum(set2)|
  double combo_residual = 0.0;      // combined first/second/third form sums
};
DirectionSumReport direction_sum_check(const SurfacePatch& patch, const Vec& u, Rng& rng,
                                       const OperatorOpts& opts = {});

// Orthonormal frame transported along the curve; column i of A(t) holds the
// components of the i-th frame vector against the surface frame.
struct CurveFrame {
  std::function<Mat(double)> A_of_t;
};
// First vector is the unit tangent; the rest complete it deterministically.
CurveFrame default_curve_frame(const CurveOnSurface& c, const OperatorOpts& opts = {});
// Surface frame itself (identity components).
CurveFrame identity_curve_frame(int N);

// N x N rotation-rate matrix of the transported frame; antisymmetric.
Mat rho_matrix(const CurveOnSurface& c, const CurveFrame& frame, double t,
               const OperatorOpts& opts = {});

struct DnuReport {
  double k = 0.0;        // curvature of the curve
  double kstar = 0.0;    // |D tangent / ds|
  double dR_ds = 0.0;
  double kstar_residual = 0.0;  // against sqrt((N-1)^2 k^2 + (dR/ds)^2/(N-1)^2)
  double pairing_residual = 0.0;  // <D tangent/ds, tangent> + (dR/ds)/(N-1)
};
DnuReport dnu_checks(const CurveOnSurface& c, double t, const OperatorOpts& opts = {});

// Named curve fixtures: "line", "circle:a", "great_circle", "torus_outer",
// or "poly:c10,c11,..;c20,c21,..".
CurveOnSurface curve_fixture(const SurfacePatch& patch, const std::string& spec);

}  // namespace pfaffgeo
