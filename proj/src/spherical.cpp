#include "pfaffgeo/spherical.hpp"

#include <cmath>

namespace pfaffgeo {

SphericalData spherical_at(const SurfacePatch& patch, const Vec& u,
                           const OperatorOpts& opts) {
  SphericalData s;
  s.conn = connection_at(patch, u, opts.conn);
  const int N = s.conn.N, M = s.conn.M;

  Mat P(M, M);  // P(j-1, s-1) = q_Njs
  for (int j = 1; j <= M; ++j)
    for (int ss = 1; ss <= M; ++ss) P(j - 1, ss - 1) = s.conn.q(N, j, ss);
  if (std::abs(P.determinant()) < 1e-10)
    throw ParabolicPointError("third form degenerate (parabolic point) on '" + patch.name + "'");
  s.q1 = P.inverse();  // q1 * P = I

  s.qtilde = NdTable({N, N, M});
  for (int m = 1; m <= N; ++m)
    for (int j = 1; j <= N; ++j)
      for (int l = 1; l <= M; ++l) {
        double acc = 0.0;
        for (int t = 1; t <= M; ++t) acc += s.conn.q(m, j, t) * s.q1(t - 1, l - 1);
        s.qtilde(m, j, l) = acc;
      }

  s.Atilde = Vec::Zero(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int l = 1; l <= N; ++l)
      for (int m = l + 1; m <= N; ++m) acc += s.Qtv(l, k, m);
    s.Atilde(k - 1) = acc;
  }
  s.Rtilde = Vec::Zero(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int t = 1; t <= N; ++t) acc += eps_sign(k, t) * s.Atilde(t - 1);
    s.Rtilde(k - 1) = acc;
  }
  s.w = s.conn.fr.x.dot(s.conn.fr.vec(N));
  return s;
}

Vec tilde_gradient(const ScalarField& f, const SphericalData& sph, const Vec& u,
                   const OperatorOpts& opts) {
  const int M = sph.conn.M;
  Vec grad = pfaff_gradient(f, sph.conn.fr, u, opts.field_step);
  Vec out(M);
  for (int l = 1; l <= M; ++l) {
    double acc = 0.0;
    for (int t = 1; t <= M; ++t) acc += grad(t - 1) * sph.q1(t - 1, l - 1);
    out(l - 1) = acc;
  }
  return out;
}

Vec tilde_nabla_ambient(const AmbField& F, int j, const SphericalData& sph, const Vec& u,
                        const OperatorOpts& opts) {
  const int M = sph.conn.M;
  std::vector<Vec> nab = nabla_ambient(F, sph.conn.fr, u, opts.outer_step);
  Vec out = Vec::Zero(sph.conn.N);
  for (int t = 1; t <= M; ++t) out += nab[static_cast<std::size_t>(t - 1)] * sph.q1(t - 1, j - 1);
  return out;
}

double third_form_position_residual(const SurfacePatch& patch, const Vec& u,
                                    const OperatorOpts& opts) {
  SphericalData sph = spherical_at(patch, u, opts);
  const int N = sph.conn.N, M = sph.conn.M;

  Vec lhs_vec = Vec::Zero(N);
  for (int j = 1; j <= M; ++j) {
    // tilde derivative of the position is a known frame contraction; its
    // second tilde derivative is taken numerically
    AmbField Wj = [&patch, &opts, j](const Vec& uu) {
      SphericalData sp = spherical_at(patch, uu, opts);
      Vec acc = Vec::Zero(sp.conn.N);
      for (int k = 1; k <= sp.conn.M; ++k)
        acc += sp.q1(k - 1, j - 1) * sp.conn.fr.vec(k);
      return acc;
    };
    Vec second = tilde_nabla_ambient(Wj, j, sph, u, opts);
    Vec first = Wj(u);
    lhs_vec += (N - 1) * second - sph.Rtilde(j - 1) / (N - 1) * first;
  }
  double lhs = lhs_vec.dot(sph.conn.fr.vec(N));
  double rhs = -(N - 1) * sph.q1.trace();
  return std::abs(lhs - rhs);
}

}  // namespace pfaffgeo
