#include "pfaffgeo/operators.hpp"

#include <cmath>

namespace pfaffgeo {

Mat pfaff_hessian(const ScalarField& f, const SurfacePatch& patch, const ConnectionData& conn,
                  const Vec& u, const OperatorOpts& opts) {
  const int N = conn.N, M = conn.M;
  Vec grad = pfaff_gradient(f, conn.fr, u, opts.field_step);

  Mat partials(M, M);  // (a, m) = d_a (grad_m f)
  for (int a = 0; a < M; ++a) {
    double h = opts.outer_step * std::max(1.0, std::abs(u(a)));
    Vec up = u, dn = u;
    up(a) += h;
    dn(a) -= h;
    Vec gp = pfaff_gradient(f, frame_at(patch, up), up, opts.field_step);
    Vec gm = pfaff_gradient(f, frame_at(patch, dn), dn, opts.field_step);
    partials.row(a) = ((gp - gm) / (2.0 * h)).head(M).transpose();
  }

  Mat hess = Mat::Zero(N, N);
  hess.topLeftCorner(M, M) = conn.fr.Binv.transpose() * partials;
  for (int m = 1; m <= M; ++m) {
    double acc = 0.0;
    for (int j = 1; j <= N; ++j) acc -= grad(j - 1) * conn.q(N, j, m);
    hess(N - 1, m - 1) = acc;
  }
  return hess;
}

Vec d_all(double fval, const Vec& grad, const Vec& R, int N) {
  Vec out(N);
  for (int k = 0; k < N; ++k)
    out(k) = (N - 1) * grad(k) - R(k) * fval / (N - 1);
  return out;
}

double d_k(const ScalarField& f, int k, const SurfacePatch&, const ConnectionData& conn,
           const Vec& u, const OperatorOpts& opts) {
  Vec grad = pfaff_gradient(f, conn.fr, u, opts.field_step);
  return (conn.N - 1) * grad(k - 1) - conn.R(k - 1) * f(u) / (conn.N - 1);
}

double beltrami2(const ScalarField& f, const SurfacePatch& patch, const ConnectionData& conn,
                 const Vec& u, const OperatorOpts& opts) {
  const int N = conn.N;
  Mat hess = pfaff_hessian(f, patch, conn, u, opts);
  Vec grad = pfaff_gradient(f, conn.fr, u, opts.field_step);
  double acc = 0.0;
  for (int k = 1; k <= N; ++k)
    acc += (N - 1) * hess(k - 1, k - 1) - grad(k - 1) * conn.R(k - 1) / (N - 1);
  return acc;
}

double beltrami2_expansion(const ScalarField& f, const SurfacePatch& patch,
                           const ConnectionData& conn, const Vec& u,
                           const OperatorOpts& opts) {
  const int N = conn.N;
  Mat hess = pfaff_hessian(f, patch, conn, u, opts);
  Vec grad = pfaff_gradient(f, conn.fr, u, opts.field_step);
  double acc = 0.0;
  for (int l = 1; l <= N; ++l)
    for (int m = l + 1; m <= N; ++m) {
      acc += hess(l - 1, l - 1) + hess(m - 1, m - 1);
      double det_sum = 0.0;
      for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
          det_sum += grad(i - 1) * conn.Qv(l, j, m) - grad(j - 1) * conn.Qv(l, i, m);
      acc += det_sum / (N - 1);
    }
  return acc;
}

LambdaField lambda_delta(int N) {
  Mat id = Mat::Identity(N, N);
  return {[id](const Vec&) { return id; }, LambdaField::Sym::symmetric};
}

LambdaField lambda_epsilon(int N) {
  Mat e = eps_matrix(N);
  return {[e](const Vec&) { return e; }, LambdaField::Sym::antisymmetric};
}

LambdaField lambda_epsilon_tangential(int N) {
  Mat e = eps_matrix(N);
  e.row(N - 1).setZero();
  e.col(N - 1).setZero();
  return {[e](const Vec&) { return e; }, LambdaField::Sym::antisymmetric};
}

LambdaField lambda_metric(const SurfacePatch& patch) {
  int N = patch.N;
  auto fn = [&patch, N](const Vec& u) {
    FrameData fr = frame_at(patch, u);
    Mat lam = Mat::Zero(N, N);
    lam.topLeftCorner(N - 1, N - 1) = fr.g;
    return lam;
  };
  return {fn, LambdaField::Sym::symmetric};
}

LambdaField lambda_constant(const Mat& lam) {
  LambdaField::Sym s = LambdaField::Sym::general;
  if ((lam - lam.transpose()).cwiseAbs().maxCoeff() < 1e-12)
    s = LambdaField::Sym::symmetric;
  else if ((lam + lam.transpose()).cwiseAbs().maxCoeff() < 1e-12)
    s = LambdaField::Sym::antisymmetric;
  return {[lam](const Vec&) { return lam; }, s};
}

Mat sym_part(const Mat& lam) { return 0.5 * (lam + lam.transpose()); }
Mat antisym_part(const Mat& lam) { return 0.5 * (lam - lam.transpose()); }

double beltrami_lambda(const ScalarField& f, const LambdaField& lam, const SurfacePatch& patch,
                    const ConnectionData& conn, const Vec& u, const OperatorOpts& opts) {
  const int N = conn.N;
  Mat L = lam.value(u);
  Mat hess = pfaff_hessian(f, patch, conn, u, opts);
  Vec grad = pfaff_gradient(f, conn.fr, u, opts.field_step);
  double acc = 0.0;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (L(i - 1, j - 1) == 0.0) continue;
      double dij = (N - 1) * hess(i - 1, j - 1) - conn.R(i - 1) * grad(j - 1) / (N - 1);
      acc += L(i - 1, j - 1) * dij;
    }
  return acc;
}

double pi_lambda(const ScalarField& f, const LambdaField& lam, const SurfacePatch& patch,
                 const ConnectionData& conn, const Vec& u, const OperatorOpts& opts) {
  const int N = conn.N, M = conn.M;
  Mat L = lam.value(u);
  Mat hess = pfaff_hessian(f, patch, conn, u, opts);
  Vec grad = pfaff_gradient(f, conn.fr, u, opts.field_step);

  // grad_j (D_i f): finite differences of the whole D vector field
  Mat dDf(M, N);  // (a, i) = d_a (D_i f)
  for (int a = 0; a < M; ++a) {
    double h = opts.outer_step * std::max(1.0, std::abs(u(a)));
    Vec up = u, dn = u;
    up(a) += h;
    dn(a) -= h;
    ConnectionData cp = connection_at(patch, up, opts.conn);
    ConnectionData cm = connection_at(patch, dn, opts.conn);
    Vec Dp = d_all(f(up), pfaff_gradient(f, cp.fr, up, opts.field_step), cp.R, N);
    Vec Dm = d_all(f(dn), pfaff_gradient(f, cm.fr, dn, opts.field_step), cm.R, N);
    dDf.row(a) = ((Dp - Dm) / (2.0 * h)).transpose();
  }
  Mat nabDf = Mat::Zero(N, N);  // (j, i) = grad_j D_i f
  nabDf.topRows(M) = conn.fr.Binv.transpose() * dDf;

  double acc = 0.0;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (L(i - 1, j - 1) == 0.0) continue;
      double di_gradj = (N - 1) * hess(i - 1, j - 1) - conn.R(i - 1) * grad(j - 1) / (N - 1);
      acc += L(i - 1, j - 1) * (di_gradj - nabDf(j - 1, i - 1));
    }
  return acc;
}

Mat nabla_R(const SurfacePatch& patch, const ConnectionData& conn, const Vec& u,
            const OperatorOpts& opts) {
  const int N = conn.N, M = conn.M;
  Mat dR(M, N);
  for (int a = 0; a < M; ++a) {
    double h = opts.outer_step * std::max(1.0, std::abs(u(a)));
    Vec up = u, dn = u;
    up(a) += h;
    dn(a) -= h;
    Vec Rp = connection_at(patch, up, opts.conn).R;
    Vec Rm = connection_at(patch, dn, opts.conn).R;
    dR.row(a) = ((Rp - Rm) / (2.0 * h)).transpose();
  }
  Mat out = Mat::Zero(N, N);
  out.topRows(M) = conn.fr.Binv.transpose() * dR;
  return out;  // (j-1, i-1) = grad_j R_i
}

double eta_lambda(const Mat& lam, const Mat& nablaR, int N) {
  double acc = 0.0;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) acc += lam(i - 1, j - 1) * nablaR(j - 1, i - 1);
  return acc / (N - 1);
}

Vec sigma_lambda(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Vec out(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) acc += (N - 1) * lam(i - 1, j - 1) * conn.qv(j, k, i);
    for (int i = 1; i <= N; ++i) acc -= lam(i - 1, k - 1) * conn.R(i - 1) / (N - 1);
    out(k - 1) = acc;
  }
  return out;
}

Vec delta_lambda_position_fd(const Mat& lam, const SurfacePatch& patch,
                             const ConnectionData& conn, const Vec& u,
                             const OperatorOpts& opts) {
  const int N = conn.N, M = conn.M;
  // grad_i of every frame vector, by central differences of the frame field
  std::vector<Mat> dE(static_cast<std::size_t>(M));  // per a: N x N matrix d_a e
  for (int a = 0; a < M; ++a) {
    double h = opts.outer_step * std::max(1.0, std::abs(u(a)));
    Vec up = u, dn = u;
    up(a) += h;
    dn(a) -= h;
    dE[static_cast<std::size_t>(a)] = (frame_at(patch, up).e - frame_at(patch, dn).e) / (2.0 * h);
  }
  auto nabla_frame = [&](int i, int j) {  // grad_i of frame vector j, ambient
    Vec acc = Vec::Zero(N);
    if (i <= M)
      for (int a = 0; a < M; ++a)
        acc += conn.fr.Binv(a, i - 1) * dE[static_cast<std::size_t>(a)].row(j - 1).transpose();
    return acc;
  };

  Vec out = Vec::Zero(N);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      double lij = lam(i - 1, j - 1);
      if (lij == 0.0) continue;
      Vec term = (N - 1) * nabla_frame(i, j) -
                 conn.R(i - 1) / (N - 1) * conn.fr.e.row(j - 1).transpose();
      out += lij * term;
    }
  return out;
}

Vec beltrami2_ambient(const AmbField& V, const SurfacePatch& patch, const ConnectionData& conn,
                      const Vec& u, const OperatorOpts& opts) {
  const int N = conn.N;
  Vec out(N);
  for (int c = 0; c < N; ++c) {
    ScalarField fc{[&V, c](const Vec& uu) { return V(uu)(c); }};
    out(c) = beltrami2(fc, patch, conn, u, opts);
  }
  return out;
}

Vec A_lambda(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Vec out = Vec::Zero(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) acc += lam(i - 1, j - 1) * conn.Qv(i, k, j);
    out(k - 1) = acc;
  }
  return out;
}

Vec A_lambda_star(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Vec out = Vec::Zero(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= N; ++i)
      for (int j = i + 1; j <= N; ++j) acc += lam(i - 1, j - 1) * conn.Qstar(i, k, j);
    out(k - 1) = acc;
  }
  return out;
}

Vec R_lambda(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Vec a = A_lambda(lam, conn);
  Vec out(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int s = 1; s <= N; ++s) acc += eps_sign(k, s) * a(s - 1);
    out(k - 1) = acc;
  }
  return out;
}

Vec R_lambda_star(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Vec a = A_lambda_star(lam, conn);
  Vec out(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int s = 1; s <= N; ++s) acc += eps_sign(k, s) * a(s - 1);
    out(k - 1) = acc;
  }
  return out;
}

Mat eps_lambda(const Mat& lam) {
  const int N = static_cast<int>(lam.rows());
  Mat out(N, N);
  for (int k = 1; k <= N; ++k)
    for (int l = 1; l <= N; ++l) {
      double acc = 0.0;
      for (int i = 1; i <= N; ++i) acc += lam(i - 1, k - 1) * eps_sign(i, l);
      out(k - 1, l - 1) = acc;
    }
  return out;
}

Vec H_lambda(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Vec out(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) acc += lam(i - 1, j - 1) * conn.qv(j, k, i);
    out(k - 1) = (N - 1) * acc;
  }
  return out;
}

Vec H_lambda_Q(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Vec out(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) acc += lam(i - 1, j - 1) * conn.Qv(i, k, j);
    out(k - 1) = (N - 1) * acc;
  }
  return out;
}

Vec H_lambda_Qstar(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Vec out(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) acc += lam(i - 1, j - 1) * conn.Qstar(i, k, j);
    out(k - 1) = (N - 1) * acc;
  }
  return out;
}

NdTable Lambda_table(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Mat el = eps_lambda(lam);
  NdTable out({N, N, N});
  for (int k = 1; k <= N; ++k)
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        double acc = (N - 1) * lam(i - 1, j - 1) * conn.Qv(i, k, j);
        for (int l = 1; l <= N; ++l) acc += el(k - 1, l - 1) * conn.Qv(i, l, j) / (N - 1);
        out(k, i, j) = acc;
      }
  return out;
}

NdTable M_table(const Mat& lam, const ConnectionData& conn) {
  const int N = conn.N;
  Mat el = eps_lambda(lam);
  NdTable out({N, N, N});
  for (int k = 1; k <= N; ++k)
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        double acc = (N - 1) * lam(i - 1, j - 1) * conn.Qstar(i, k, j);
        for (int l = 1; l <= N; ++l) acc -= el(k - 1, l - 1) * conn.Qv(i, l, j) / (N - 1);
        out(k, i, j) = acc;
      }
  return out;
}

OperatorReport invariants_report(const SurfacePatch& patch, const Vec& u,
                                 const OperatorOpts& opts) {
  return invariants_report(patch, connection_at(patch, u, opts.conn), u, opts);
}

OperatorReport invariants_report(const SurfacePatch& patch, const ConnectionData& conn,
                                 const Vec& u, const OperatorOpts& opts) {
  Mat lam = Mat::Zero(conn.N, conn.N);
  lam.topLeftCorner(conn.M, conn.M) = conn.fr.g;
  return invariants_report(patch, conn, u, lambda_constant(lam), opts);
}

OperatorReport invariants_report(const SurfacePatch& patch, const ConnectionData& conn,
                                 const Vec& u, const LambdaField& lamf,
                                 const OperatorOpts& opts) {
  const int N = conn.N, M = conn.M;
  OperatorReport r;
  r.N = N;
  r.M = M;
  r.K = conn.kappa.determinant();
  Mat lamg = Mat::Zero(N, N);
  lamg.topLeftCorner(M, M) = conn.fr.g;
  r.H = H_lambda(lamg, conn);
  r.h = Vec::Zero(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int l = 1; l <= M; ++l) acc += conn.q(l, k, l);
    r.h(k - 1) = (N - 1) * acc;
  }
  r.hstar = r.h - conn.R / (N - 1);
  r.Rstar_k = Vec::Zero(M);
  for (int k = 1; k <= M; ++k) {
    double acc = 0.0;
    for (int i = 0; i < M; ++i) acc += conn.kappa(i, k - 1) * conn.kappa(i, k - 1);
    r.Rstar_k(k - 1) = (N - 1) * acc;
  }
  r.Rstar = r.Rstar_k.sum();
  r.R = conn.R;
  r.A = conn.A;
  Mat lamv = lamf.value(u);
  r.sigma = sigma_lambda(lamv, conn);
  r.eta = eta_lambda(lamv, nabla_R(patch, conn, u, opts), N);
  r.support = conn.fr.x.dot(conn.fr.vec(N));
  r.flat = conn.kappa.cwiseAbs().maxCoeff() < 1e-8;
  r.two_minimal = r.h.cwiseAbs().maxCoeff() < 1e-8;
  return r;
}

SrReport sr_diagnostic(const SurfacePatch& patch, const std::vector<Vec>& grid,
                       double threshold, const OperatorOpts& opts) {
  if (grid.empty()) throw ConfigError("sr diagnostic needs a nonempty grid");
  SrReport rep;
  rep.threshold = threshold;
  for (const Vec& u : grid) {
    ConnectionData conn = connection_at(patch, u, opts.conn);
    Mat nR = nabla_R(patch, conn, u, opts);
    const int N = conn.N, M = conn.M;
    for (int l = 1; l <= M; ++l)
      for (int m = l + 1; m <= M; ++m) {
        double acc = nR(l - 1, m - 1) - nR(m - 1, l - 1);
        for (int k = 1; k <= N; ++k) acc += conn.R(k - 1) * conn.Qv(l, k, m);
        rep.max_residual = std::max(rep.max_residual, std::abs(acc));
      }
    rep.max_abs_R_normal = std::max(rep.max_abs_R_normal, std::abs(conn.R(N - 1)));
  }
  rep.closed = rep.max_residual <= threshold;
  return rep;
}

}  // namespace pfaffgeo
