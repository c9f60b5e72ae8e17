// Derived differential operators: D_k, the second Beltrami operator, the
// lambda-weighted generalizations and their commutator sums, curvature
// invariants, and the R-form closedness diagnostic.
#pragma once

#include "pfaffgeo/connection.hpp"

namespace pfaffgeo {

struct OperatorOpts {
  double field_step = 6.0554544523933395e-06;  // cbrt(eps), analytic fields
  double outer_step = 1e-4;                    // derivatives of derived fields
  ConnectionOpts conn;
};

// Full N x N table of iterated Pfaff derivatives, hess(k,m) = grad_k grad_m f
// (0-based storage, 1-based meaning). The tangential block differentiates the
// gradient field; the normal row carries the consistency value
// -sum_j (grad_j f) q_Njm forced by the commutator identity at (l, N); the
// normal column is zero.
Mat pfaff_hessian(const ScalarField& f, const SurfacePatch& patch, const ConnectionData& conn,
                  const Vec& u, const OperatorOpts& opts = {});

// First-order operator mixing the gradient with the R vector.
double d_k(const ScalarField& f, int k, const SurfacePatch& patch, const ConnectionData& conn,
           const Vec& u, const OperatorOpts& opts = {});
// All N components at once given precomputed data.
Vec d_all(double fval, const Vec& grad, const Vec& R, int N);

double beltrami2(const ScalarField& f, const SurfacePatch& patch, const ConnectionData& conn,
                 const Vec& u, const OperatorOpts& opts = {});
// The pairwise double-sum expansion of the same operator (independent route).
double beltrami2_expansion(const ScalarField& f, const SurfacePatch& patch,
                           const ConnectionData& conn, const Vec& u,
                           const OperatorOpts& opts = {});

struct LambdaField {
  enum class Sym { symmetric, antisymmetric, general };
  std::function<Mat(const Vec&)> value;  // N x N table
  Sym sym = Sym::general;
};

LambdaField lambda_delta(int N);
LambdaField lambda_epsilon(int N);
// epsilon restricted to the tangential block (zero normal row/column)
LambdaField lambda_epsilon_tangential(int N);
// coordinate metric padded into N x N with zero normal row/column
LambdaField lambda_metric(const SurfacePatch& patch);
LambdaField lambda_constant(const Mat& lam);

Mat sym_part(const Mat& lam);
Mat antisym_part(const Mat& lam);

// sum_ij lam_ij D_i grad_j f
double beltrami_lambda(const ScalarField& f, const LambdaField& lam, const SurfacePatch& patch,
                    const ConnectionData& conn, const Vec& u, const OperatorOpts& opts = {});

// sum_ij lam_ij [D_i, grad_j] f
double pi_lambda(const ScalarField& f, const LambdaField& lam, const SurfacePatch& patch,
                 const ConnectionData& conn, const Vec& u, const OperatorOpts& opts = {});

// (j,i) entry grad_j R_i, rows j = 1..M filled, row N zero.
Mat nabla_R(const SurfacePatch& patch, const ConnectionData& conn, const Vec& u,
            const OperatorOpts& opts = {});
// (1/(N-1)) sum_ij lam_ij grad_j R_i
double eta_lambda(const Mat& lam, const Mat& nablaR, int N);

// Frame components of the lambda operator applied to the position vector,
// closed form: sigma_k = (N-1) sum_ij lam_ij q_jki - (1/(N-1)) sum_i lam_ik R_i.
Vec sigma_lambda(const Mat& lam, const ConnectionData& conn);
// Same vector assembled from finite-differenced frame fields (independent
// route, ambient coordinates).
Vec delta_lambda_position_fd(const Mat& lam, const SurfacePatch& patch,
                             const ConnectionData& conn, const Vec& u,
                             const OperatorOpts& opts = {});

// Componentwise Beltrami operator on an ambient-vector field (values against
// the fixed ambient basis).
Vec beltrami2_ambient(const AmbField& V, const SurfacePatch& patch, const ConnectionData& conn,
                      const Vec& u, const OperatorOpts& opts = {});

// Contraction tables over a lambda field.
Vec A_lambda(const Mat& lam, const ConnectionData& conn);        // sum_{i<j} lam_ij Q_ikj
Vec A_lambda_star(const Mat& lam, const ConnectionData& conn);   // with Q* = q_ikj + q_jki
Vec R_lambda(const Mat& lam, const ConnectionData& conn);
Vec R_lambda_star(const Mat& lam, const ConnectionData& conn);
Mat eps_lambda(const Mat& lam);                                  // sum_i lam_ik eps_il
Vec H_lambda(const Mat& lam, const ConnectionData& conn);        // (N-1) sum lam_ij q_jki
Vec H_lambda_Q(const Mat& lam, const ConnectionData& conn);      // (N-1) sum lam_ij Q_ikj
Vec H_lambda_Qstar(const Mat& lam, const ConnectionData& conn);  // (N-1) sum lam_ij Q*_ikj

// (N-1) lam_ij Q_ikj + (1/(N-1)) sum_l eps^lam_kl Q_ilj, slots (k,i,j)
NdTable Lambda_table(const Mat& lam, const ConnectionData& conn);
// (N-1) lam_ij Q*_ikj - (1/(N-1)) sum_l eps^lam_kl Q_ilj
NdTable M_table(const Mat& lam, const ConnectionData& conn);

// Per-point invariants for reporting.
struct OperatorReport {
  int N = 0, M = 0;
  double K = 0.0;       // det of the shape table
  Vec H;                // metric mean curvature, length N
  Vec h;                // 2-mean curvature (N-1) sum_l q_lkl, length N
  Vec hstar;            // h_k - R_k/(N-1)
  Vec Rstar_k;          // (N-1) sum_i kappa_ik^2, length M
  double Rstar = 0.0;   // sum of Rstar_k
  Vec R;                // length N
  Vec A;                // length N
  Vec sigma;            // frame components of the lambda position image
  double eta = 0.0;     // metric eta
  double support = 0.0; // <x, e_N>
  bool flat = false;
  bool two_minimal = false;
};

// lambda defaults to the padded metric for sigma and eta.
OperatorReport invariants_report(const SurfacePatch& patch, const Vec& u,
                                 const OperatorOpts& opts = {});
OperatorReport invariants_report(const SurfacePatch& patch, const ConnectionData& conn,
                                 const Vec& u, const OperatorOpts& opts = {});
OperatorReport invariants_report(const SurfacePatch& patch, const ConnectionData& conn,
                                 const Vec& u, const LambdaField& lam,
                                 const OperatorOpts& opts);

// Closedness of the R form over a grid: a nonzero residual certifies the
// space is not S-R; a vanishing one is the necessary condition.
struct SrReport {
  double max_residual = 0.0;
  double threshold = 0.0;
  bool closed = false;         // residual below threshold at every grid point
  double max_abs_R_normal = 0.0;
};
SrReport sr_diagnostic(const SurfacePatch& patch, const std::vector<Vec>& grid,
                       double threshold = 1e-3, const OperatorOpts& opts = {});

}  // namespace pfaffgeo
