#include "pfaffgeo/connection.hpp"

#include <cmath>

namespace pfaffgeo {

ConnectionData connection_at(const SurfacePatch& patch, const Vec& u,
                             const ConnectionOpts& opts) {
  ConnectionData c;
  c.fr = frame_at(patch, u);
  const int N = c.N = patch.N;
  const int M = c.M = patch.M;

  // Gamma_ijl = <d_l e_i, e_j> by central differences of the frame field;
  // Gram-Schmidt output is smooth wherever the tangent map has full rank.
  c.gamma = NdTable({N, N, M});
  for (int l = 1; l <= M; ++l) {
    double h = opts.frame_step * std::max(1.0, std::abs(u(l - 1)));
    Vec up = u, dn = u;
    up(l - 1) += h;
    dn(l - 1) -= h;
    Mat ep = frame_at(patch, up).e;
    Mat em = frame_at(patch, dn).e;
    Mat de = (ep - em) / (2.0 * h);
    Mat gam = de * c.fr.e.transpose();  // gam(i-1, j-1) = <d_l e_i, e_j>
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) c.gamma(i, j, l) = gam(i - 1, j - 1);
  }

  // Solve Gamma_ij. = q_ij. * B for each frame pair, then enforce the
  // antisymmetry exactly.
  c.q = NdTable({N, N, M});
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      Eigen::RowVectorXd grow(M);
      for (int l = 1; l <= M; ++l) grow(l - 1) = c.gamma(i, j, l);
      Eigen::RowVectorXd qrow = grow * c.fr.Binv;
      for (int m = 1; m <= M; ++m) c.q(i, j, m) = qrow(m - 1);
    }
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int m = 1; m <= M; ++m) {
        if (i < j) {
          double a = 0.5 * (c.q(i, j, m) - c.q(j, i, m));
          c.q(i, j, m) = a;
          c.q(j, i, m) = -a;
        } else if (i == j) {
          c.q(i, j, m) = 0.0;
        }
      }

  c.kappa = Mat(M, M);
  for (int k = 1; k <= M; ++k)
    for (int m = 1; m <= M; ++m) c.kappa(k - 1, m - 1) = c.q(k, N, m);

  c.A = Vec::Zero(N);
  for (int s = 1; s <= N; ++s) {
    double acc = 0.0;
    for (int l = 1; l <= N; ++l)
      for (int m = l + 1; m <= N; ++m) acc += c.Qv(l, s, m);
    c.A(s - 1) = acc;
  }
  c.R = Vec::Zero(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int s = 1; s <= N; ++s) acc += eps_sign(k, s) * c.A(s - 1);
    c.R(k - 1) = acc;
  }

  c.Rcurv = NdTable({N, N, M, M});
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int l = 1; l <= M; ++l)
        for (int m = 1; m <= M; ++m) {
          double acc = 0.0;
          for (int s = 1; s <= N; ++s)
            acc -= c.qv(i, s, l) * c.qv(j, s, m) - c.qv(i, s, m) * c.qv(j, s, l);
          c.Rcurv(i, j, l, m) = acc;
        }
  return c;
}

NdTable connection_gradient(const SurfacePatch& patch, const Vec& u,
                            const ConnectionData& conn, const ConnectionOpts& opts) {
  const int N = conn.N, M = conn.M;
  // coordinate partials of the whole q table, then the Pfaff contraction
  std::vector<NdTable> dq(static_cast<std::size_t>(M));
  for (int a = 1; a <= M; ++a) {
    double h = opts.nested_step * std::max(1.0, std::abs(u(a - 1)));
    Vec up = u, dn = u;
    up(a - 1) += h;
    dn(a - 1) -= h;
    NdTable qp = connection_at(patch, up, opts).q;
    NdTable qm = connection_at(patch, dn, opts).q;
    NdTable d({N, N, M});
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j)
        for (int m = 1; m <= M; ++m) d(i, j, m) = (qp(i, j, m) - qm(i, j, m)) / (2.0 * h);
    dq[static_cast<std::size_t>(a - 1)] = d;
  }
  NdTable out({N, N, M, M});
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int m = 1; m <= M; ++m)
        for (int l = 1; l <= M; ++l) {
          double acc = 0.0;
          for (int a = 1; a <= M; ++a)
            acc += dq[static_cast<std::size_t>(a - 1)](i, j, m) * conn.fr.Binv(a - 1, l - 1);
          out(i, j, m, l) = acc;
        }
  return out;
}

std::pair<NdTable, NdTable> curvature_two_ways(const SurfacePatch& patch, const Vec& u,
                                               const ConnectionOpts& opts) {
  ConnectionData c = connection_at(patch, u, opts);
  const int N = c.N, M = c.M;
  NdTable nq = connection_gradient(patch, u, c, opts);

  NdTable Ra({N, N, M, M});
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int l = 1; l <= M; ++l)
        for (int m = 1; m <= M; ++m) {
          double acc = nq(i, j, m, l) - nq(i, j, l, m);
          for (int s = 1; s <= M; ++s) acc += c.q(i, j, s) * c.Qv(l, s, m);
          Ra(i, j, l, m) = acc;
        }
  return {Ra, c.Rcurv};
}

Mat nabla_coeffs(const CoeffField& Y, const FrameData& fr, const Vec& u, double h) {
  const int N = fr.N, M = fr.M;
  Mat partials(M, N);
  for (int a = 0; a < M; ++a) {
    double ha = h * std::max(1.0, std::abs(u(a)));
    Vec up = u, dn = u;
    up(a) += ha;
    dn(a) -= ha;
    partials.row(a) = ((Y(up) - Y(dn)) / (2.0 * ha)).transpose();
  }
  Mat out = Mat::Zero(N, N);
  out.topRows(M) = fr.Binv.transpose() * partials;
  return out;  // out(k-1, j-1) = grad_k Y_j
}

NdTable semicolon_derivative(const TensorField& t, const std::vector<int>& bracket_slots,
                             int l, const SurfacePatch& patch, const ConnectionData& conn,
                             const Vec& u, double h) {
  const int M = conn.M;
  if (l < 1 || l > M) throw ConfigError("semicolon derivative direction must be tangential");
  const int rank = static_cast<int>(t.dims.size());
  for (int s : bracket_slots)
    if (s < 1 || s > rank) throw ConfigError("bracketed slot out of range");

  NdTable value = t.eval(u);

  // grad_l of every component
  NdTable out(t.dims);
  {
    std::vector<NdTable> dpart;
    dpart.reserve(static_cast<std::size_t>(M));
    for (int a = 1; a <= M; ++a) {
      double ha = h * std::max(1.0, std::abs(u(a - 1)));
      Vec up = u, dn = u;
      up(a - 1) += ha;
      dn(a - 1) -= ha;
      NdTable tp = t.eval(up), tm = t.eval(dn);
      NdTable d(t.dims);
      for (std::size_t ii = 0; ii < d.raw().size(); ++ii)
        d.raw()[ii] = (tp.raw()[ii] - tm.raw()[ii]) / (2.0 * ha);
      dpart.push_back(std::move(d));
    }
    for (std::size_t ii = 0; ii < out.raw().size(); ++ii) {
      double acc = 0.0;
      for (int a = 1; a <= M; ++a)
        acc += dpart[static_cast<std::size_t>(a - 1)].raw()[ii] * conn.fr.Binv(a - 1, l - 1);
      out.raw()[ii] = acc;
    }
  }

  // one connection contraction per bracketed slot
  std::vector<int> idx(static_cast<std::size_t>(rank), 1);
  while (true) {
    for (int slot : bracket_slots) {
      int k = idx[static_cast<std::size_t>(slot - 1)];
      double acc = 0.0;
      std::vector<int> jdx = idx;
      for (int nu = 1; nu <= t.dims[static_cast<std::size_t>(slot - 1)]; ++nu) {
        jdx[static_cast<std::size_t>(slot - 1)] = nu;
        acc += conn.qv(k, nu, l) * value.at(jdx);
      }
      out.at(idx) -= acc;
    }
    int k = rank - 1;
    for (; k >= 0; --k) {
      if (idx[static_cast<std::size_t>(k)] < t.dims[static_cast<std::size_t>(k)]) {
        ++idx[static_cast<std::size_t>(k)];
        break;
      }
      idx[static_cast<std::size_t>(k)] = 1;
    }
    if (k < 0) break;
  }
  return out;
}

double theta_from_tables(const Vec& Y, const Mat& nablaY, const ConnectionData& conn, int l,
                         int m) {
  double acc = nablaY(l - 1, m - 1) - nablaY(m - 1, l - 1);
  for (int k = 1; k <= conn.N; ++k) acc += Y(k - 1) * conn.Qv(l, k, m);
  return acc;
}

double theta1(const CoeffField& Y, int l, int m, const SurfacePatch&,
              const ConnectionData& conn, const Vec& u, double h) {
  Mat nab = nabla_coeffs(Y, conn.fr, u, h);
  return theta_from_tables(Y(u), nab, conn, l, m);
}

double theta2(const CoeffField& a, int l, int m, const SurfacePatch& patch,
              const ConnectionData& conn, const Vec& u, double h) {
  return theta1(a, l, m, patch, conn, u, h);
}

}  // namespace pfaffgeo
