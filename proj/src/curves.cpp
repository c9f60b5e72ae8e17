#include "pfaffgeo/curves.hpp"

#include <cmath>
#include <sstream>

namespace pfaffgeo {

namespace {
Vec du_dt(const CurveOnSurface& c, double t) {
  double h = c.fd_step();
  return (c.u(t + h) - c.u(t - h)) / (2.0 * h);
}
}  // namespace

Vec curve_velocity(const CurveOnSurface& c, double t) {
  Jet3 J = jet(*c.patch, c.u(t), 1);
  return J.d1 * du_dt(c, t);
}

Vec curve_unit_tangent(const CurveOnSurface& c, double t) {
  Vec v = curve_velocity(c, t);
  double speed = v.norm();
  if (speed < 1e-10) throw DegeneracyError("curve has vanishing speed");
  return v / speed;
}

Vec coframe_rates(const CurveOnSurface& c, const FrameData& fr, double t) {
  return fr.e * curve_unit_tangent(c, t);
}

VerticalCurvature vertical_curvature(const CurveOnSurface& c, double t,
                                     const OperatorOpts& opts) {
  ConnectionData conn = connection_at(*c.patch, c.u(t), opts.conn);
  const int M = conn.M;
  Vec rates = coframe_rates(c, conn.fr, t);

  VerticalCurvature out;
  for (int k = 1; k <= M; ++k)
    for (int m = 1; m <= M; ++m)
      out.quadratic_form += conn.kappa(k - 1, m - 1) * rates(k - 1) * rates(m - 1);

  double h = c.fd_step();
  Vec tp = curve_unit_tangent(c, t + h);
  Vec tm = curve_unit_tangent(c, t - h);
  double ds_dt = curve_velocity(c, t).norm();
  Vec dT_ds = (tp - tm) / (2.0 * h) / ds_dt;
  out.direct = dT_ds.dot(conn.fr.vec(conn.N));
  return out;
}

DirectionSumReport direction_sum_check(const SurfacePatch& patch, const Vec& u, Rng& rng,
                                       const OperatorOpts& opts) {
  ConnectionData conn = connection_at(patch, u, opts.conn);
  const int N = conn.N, M = conn.M;
  Mat P(M, M);  // P(k-1, m-1) = q_Nkm, the normal coframe derivative table
  for (int k = 1; k <= M; ++k)
    for (int m = 1; m <= M; ++m) P(k - 1, m - 1) = conn.q(N, k, m);

  auto vertical_sum = [&](const Mat& dirs) {
    double acc = 0.0;
    for (int i = 0; i < M; ++i) acc += dirs.row(i) * conn.kappa * dirs.row(i).transpose();
    return acc;
  };
  Mat set1 = rng.rotation(M);
  Mat set2 = rng.rotation(M);
  double sum1 = vertical_sum(set1);

  DirectionSumReport rep;
  rep.trace_residual = std::abs(sum1 - conn.kappa.trace());
  rep.set_independence = std::abs(sum1 - vertical_sum(set2));

  double A = rng.uniform(-2.0, 2.0), B = rng.uniform(-2.0, 2.0), C = rng.uniform(-2.0, 2.0);
  double lhs = 0.0;
  for (int i = 0; i < M; ++i) {
    Vec v = set1.row(i);
    Vec w = P * v;  // normal coframe rates along the direction
    lhs += A * v.squaredNorm() + B * w.squaredNorm() + C * v.dot(w);
  }
  double rhs = (N - 1) * A + B * P.squaredNorm() + C * P.trace();
  rep.combo_residual = std::abs(lhs - rhs);
  return rep;
}

CurveFrame identity_curve_frame(int N) {
  Mat id = Mat::Identity(N, N);
  return {[id](double) { return id; }};
}

CurveFrame default_curve_frame(const CurveOnSurface& c, const OperatorOpts& opts) {
  const SurfacePatch* patch = c.patch;
  CurveOnSurface cc = c;
  (void)opts;
  auto build = [patch, cc](double t) {
    FrameData fr = frame_at(*patch, cc.u(t));
    const int N = fr.N;
    Vec v = fr.e * curve_unit_tangent(cc, t);  // frame components of the tangent
    Mat A = Mat::Zero(N, N);
    A.col(0) = v / v.norm();
    int done = 1;
    for (int cand = 0; cand < N && done < N; ++cand) {
      int j = (cand + 1) % N;  // e_2, e_3, .., e_N, e_1
      Vec w = Vec::Zero(N);
      w(j) = 1.0;
      for (int kk = 0; kk < done; ++kk) w -= w.dot(A.col(kk)) * A.col(kk);
      double n = w.norm();
      if (n < 1e-6) continue;
      A.col(done++) = w / n;
    }
    if (done < N) throw DegeneracyError("could not complete the transported curve frame");
    return A;
  };
  return {build};
}

Mat rho_matrix(const CurveOnSurface& c, const CurveFrame& frame, double t,
               const OperatorOpts& opts) {
  ConnectionData conn = connection_at(*c.patch, c.u(t), opts.conn);
  const int N = conn.N, M = conn.M;
  Mat A = frame.A_of_t(t);
  if ((A.transpose() * A - Mat::Identity(N, N)).cwiseAbs().maxCoeff() > 1e-8)
    throw ConfigError("curve frame is not orthogonal");

  double h = c.fd_step();
  double ds_dt = curve_velocity(c, t).norm();
  Mat dA_ds = (frame.A_of_t(t + h) - frame.A_of_t(t - h)) / (2.0 * h) / ds_dt;
  Vec rates = coframe_rates(c, conn.fr, t);

  Mat cmat(N, N);  // cmat(i-1, m-1) = projection of d t_i/ds on e_m
  for (int i = 1; i <= N; ++i)
    for (int m = 1; m <= N; ++m) {
      double acc = dA_ds(m - 1, i - 1);
      for (int l = 1; l <= M; ++l)
        for (int k = 1; k <= N; ++k)
          acc -= conn.q(m, k, l) * A(k - 1, i - 1) * rates(l - 1);
      cmat(i - 1, m - 1) = acc;
    }
  return cmat * A;  // (i-1, j-1) = 1/rho_ij
}

DnuReport dnu_checks(const CurveOnSurface& c, double t, const OperatorOpts& opts) {
  ConnectionData conn = connection_at(*c.patch, c.u(t), opts.conn);
  const int N = conn.N;
  double h = c.fd_step();
  double ds_dt = curve_velocity(c, t).norm();
  Vec nu = curve_unit_tangent(c, t);
  Vec dnu_ds = (curve_unit_tangent(c, t + h) - curve_unit_tangent(c, t - h)) / (2.0 * h) / ds_dt;

  DnuReport rep;
  rep.k = dnu_ds.norm();
  Vec rates = coframe_rates(c, conn.fr, t);
  rep.dR_ds = conn.R.dot(rates);
  Vec Dnu_ds = (N - 1) * dnu_ds - rep.dR_ds / (N - 1) * nu;
  rep.kstar = Dnu_ds.norm();
  double formula = std::sqrt(std::pow((N - 1) * rep.k, 2) +
                             std::pow(rep.dR_ds / (N - 1), 2));
  rep.kstar_residual = std::abs(rep.kstar - formula);
  rep.pairing_residual = std::abs(Dnu_ds.dot(nu) + rep.dR_ds / (N - 1));
  return rep;
}

CurveOnSurface curve_fixture(const SurfacePatch& patch, const std::string& spec) {
  CurveOnSurface c;
  c.patch = &patch;
  const int M = patch.M;

  auto center = patch.center();
  if (spec == "line") {
    Vec d(M);
    double w = 1.0;
    for (int l = 0; l < M; ++l) {
      d(l) = 0.3 * (patch.box[static_cast<std::size_t>(l)][1] -
                    patch.box[static_cast<std::size_t>(l)][0]) * w;
      w *= 0.4;
    }
    c.t0 = -1.0;
    c.t1 = 1.0;
    c.u_of_t = [center, d](double t) { return (center + t * d).eval(); };
    return c;
  }
  if (spec.rfind("circle", 0) == 0) {
    double a = 0.25;
    auto pos = spec.find(':');
    if (pos != std::string::npos) a = std::stod(spec.substr(pos + 1));
    double a1 = a * (patch.box[0][1] - patch.box[0][0]) * 0.5;
    double a2 = a * (patch.box[1][1] - patch.box[1][0]) * 0.5;
    c.t0 = 0.0;
    c.t1 = 2.0 * M_PI;
    c.u_of_t = [center, a1, a2](double t) {
      Vec u = center;
      u(0) += a1 * std::cos(t);
      u(1) += a2 * std::sin(t);
      return u;
    };
    return c;
  }
  if (spec == "great_circle") {
    if (patch.name.rfind("hypersphere", 0) != 0)
      throw ConfigError("great_circle fixture requires a hypersphere patch");
    c.t0 = 0.3;
    c.t1 = 2.0 * M_PI - 0.3;
    int m = M;
    c.u_of_t = [m](double t) {
      Vec u = Vec::Constant(m, M_PI / 2.0);
      u(m - 1) = t;
      return u;
    };
    return c;
  }
  if (spec == "torus_outer") {
    if (patch.name.rfind("torus3", 0) != 0)
      throw ConfigError("torus_outer fixture requires a torus3 patch");
    c.t0 = 0.2;
    c.t1 = 2.0 * M_PI - 0.2;
    c.u_of_t = [](double t) {
      Vec u(2);
      u << t, 0.0;
      return u;
    };
    return c;
  }
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<std::vector<double>> coeffs;
    std::stringstream rows(spec.substr(5));
    std::string row;
    while (std::getline(rows, row, ';')) {
      std::vector<double> cs;
      std::stringstream items(row);
      std::string item;
      while (std::getline(items, item, ',')) cs.push_back(std::stod(item));
      coeffs.push_back(cs);
    }
    if (static_cast<int>(coeffs.size()) != M)
      throw ConfigError("poly curve needs one coefficient row per parameter");
    c.t0 = 0.0;
    c.t1 = 1.0;
    c.u_of_t = [coeffs, M](double t) {
      Vec u(M);
      for (int l = 0; l < M; ++l) {
        double acc = 0.0, p = 1.0;
        for (double cj : coeffs[static_cast<std::size_t>(l)]) {
          acc += cj * p;
          p *= t;
        }
        u(l) = acc;
      }
      return u;
    };
    return c;
  }
  throw ConfigError("unknown curve fixture '" + spec + "'");
}

}  // namespace pfaffgeo
