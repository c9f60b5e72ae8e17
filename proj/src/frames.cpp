#include "pfaffgeo/frames.hpp"

#include <cmath>

namespace pfaffgeo {

namespace {
const double kFieldStep = std::cbrt(std::numeric_limits<double>::epsilon());
}

double default_field_step() { return kFieldStep; }

Vec FrameData::gradient_from_partials(const Vec& partials) const {
  Vec grad = Vec::Zero(N);
  grad.head(M) = Binv.transpose() * partials;
  return grad;
}

FrameData frame_at(const SurfacePatch& patch, const Vec& u) {
  Jet3 J = jet(patch, u, 1);
  const int N = patch.N, M = patch.M;

  Eigen::JacobiSVD<Mat> svd(J.d1);
  if (svd.singularValues()(M - 1) < 1e-10)
    throw DegeneracyError("rank-deficient tangent map on '" + patch.name + "'");

  FrameData fr;
  fr.N = N;
  fr.M = M;
  fr.x = J.x;
  fr.e = Mat::Zero(N, N);

  // ordered Gram-Schmidt of the coordinate tangents, no pivoting
  for (int l = 0; l < M; ++l) {
    Vec w = J.d1.col(l);
    for (int k = 0; k < l; ++k) w -= w.dot(fr.e.row(k)) * fr.e.row(k).transpose();
    double n = w.norm();
    if (n < 1e-12)
      throw DegeneracyError("Gram-Schmidt breakdown on '" + patch.name + "'");
    fr.e.row(l) = w.transpose() / n;
  }

  // the unique unit complement with det(e) = +1, via cofactor expansion
  Mat minor(M, M);
  Vec n(N);
  for (int c = 0; c < N; ++c) {
    int jj = 0;
    for (int j = 0; j < N; ++j) {
      if (j == c) continue;
      minor.col(jj++) = fr.e.block(0, j, M, 1);
    }
    double sign = ((M + c) % 2 == 0) ? 1.0 : -1.0;
    n(c) = sign * minor.determinant();
  }
  fr.e.row(N - 1) = n.transpose() / n.norm();

  fr.b = fr.e * J.d1;
  Mat B = fr.b.topRows(M);
  fr.g = B.transpose() * B;
  Eigen::FullPivLU<Mat> lu(B);
  if (!lu.isInvertible())
    throw DegeneracyError("singular tangential coefficient block on '" + patch.name + "'");
  fr.Binv = lu.inverse();
  return fr;
}

Vec pfaff_partials(const ScalarField& f, const Vec& u, double h) {
  const int M = static_cast<int>(u.size());
  Vec d(M);
  for (int l = 0; l < M; ++l) {
    double hl = h * std::max(1.0, std::abs(u(l)));
    Vec up = u, dn = u;
    up(l) += hl;
    dn(l) -= hl;
    d(l) = (f(up) - f(dn)) / (2.0 * hl);
  }
  return d;
}

Vec pfaff_gradient(const ScalarField& f, const FrameData& fr, const Vec& u, double h) {
  return fr.gradient_from_partials(pfaff_partials(f, u, h));
}

Vec pfaff_gradient(const ScalarField& f, const SurfacePatch& patch, const Vec& u) {
  return pfaff_gradient(f, frame_at(patch, u), u, kFieldStep);
}

std::vector<Vec> nabla_ambient(const AmbField& F, const FrameData& fr, const Vec& u, double h) {
  const int N = fr.N, M = fr.M;
  Mat partials(N, M);  // column l = d_l F
  for (int l = 0; l < M; ++l) {
    double hl = h * std::max(1.0, std::abs(u(l)));
    Vec up = u, dn = u;
    up(l) += hl;
    dn(l) -= hl;
    partials.col(l) = (F(up) - F(dn)) / (2.0 * hl);
  }
  std::vector<Vec> out(static_cast<std::size_t>(N), Vec::Zero(N));
  Mat nab = partials * fr.Binv;  // column k = grad_{k+1} F
  for (int k = 0; k < M; ++k) out[static_cast<std::size_t>(k)] = nab.col(k);
  return out;
}

}  // namespace pfaffgeo
