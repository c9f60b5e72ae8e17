#include "pfaffgeo/checks.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pfaffgeo {

namespace {

void upd(double& m, double v) { m = std::max(m, std::abs(v)); }

Mat random_antisym(Rng& rng, int N, bool tangential) {
  Mat lam = Mat::Zero(N, N);
  int top = tangential ? N - 1 : N;
  for (int i = 0; i < top; ++i)
    for (int j = i + 1; j < top; ++j) {
      double v = rng.uniform(-1.0, 1.0);
      lam(i, j) = v;
      lam(j, i) = -v;
    }
  return lam;
}

Mat random_sym(Rng& rng, int N, bool tangential) {
  Mat lam = Mat::Zero(N, N);
  int top = tangential ? N - 1 : N;
  for (int i = 0; i < top; ++i)
    for (int j = i; j < top; ++j) {
      double v = rng.uniform(-1.0, 1.0);
      lam(i, j) = v;
      lam(j, i) = v;
    }
  return lam;
}

Mat random_general(Rng& rng, int N, bool tangential) {
  Mat lam = Mat::Zero(N, N);
  int top = tangential ? N - 1 : N;
  for (int i = 0; i < top; ++i)
    for (int j = 0; j < top; ++j) lam(i, j) = rng.uniform(-1.0, 1.0);
  return lam;
}

// Theta of the R form from a precomputed derivative table.
double theta_R(const ConnectionData& conn, const Mat& nablaR, int i, int j) {
  double acc = nablaR(i - 1, j - 1) - nablaR(j - 1, i - 1);
  for (int k = 1; k <= conn.N; ++k) acc += conn.R(k - 1) * conn.Qv(i, k, j);
  return acc;
}

ScalarField product_field(const ScalarField& f, const ScalarField& g) {
  return {[f, g](const Vec& u) { return f(u) * g(u); }};
}

AmbField position_field(const SurfacePatch& patch) {
  return [&patch](const Vec& u) { return patch.eval(u); };
}

AmbField frame_row_field(const SurfacePatch& patch, int k) {
  return [&patch, k](const Vec& u) { return Vec(frame_at(patch, u).vec(k)); };
}

// Curve fixtures appropriate for a given patch.
std::vector<std::string> curve_specs_for(const SurfacePatch& patch) {
  if (patch.name.rfind("hypersphere", 0) == 0) return {"great_circle", "circle:0.2"};
  if (patch.name.rfind("torus3", 0) == 0) return {"torus_outer", "circle:0.2"};
  if (patch.name.rfind("hyperplane", 0) == 0) return {"line", "circle:0.3"};
  return {"circle:0.25"};
}

bool is_unit_hypersphere(const SurfacePatch& p) {
  return p.name == "hypersphere" && p.params.size() == 2 && std::abs(p.params[1] - 1.0) < 1e-12;
}
bool is_flat(const SurfacePatch& p) { return p.name == "hyperplane"; }
bool has_elliptic_points(const SurfacePatch& p) { return p.name != "hyperplane"; }

}  // namespace

CheckContext::CheckContext(const SurfacePatch& p, std::uint64_t seed_, int npoints_, bool fault)
    : patch(&p), seed(seed_), npoints(npoints_), fault_inject(fault), rng(seed_ * 0x9e37u + 17u) {
  for (int i = 0; i < npoints; ++i) points.push_back(p.sample_interior(rng));
}

ConnectionData CheckContext::conn(const Vec& u) const {
  ConnectionData c = connection_at(*patch, u, opts.conn);
  if (fault_inject && c.N >= 2) {
    c.q(1, 2, 1) += 0.01;
    c.q(2, 1, 1) -= 0.01;
  }
  return c;
}

std::vector<ScalarField> CheckContext::fields(int n, bool positive) {
  std::vector<ScalarField> out;
  const SurfacePatch* p = patch;
  const int M = p->M, N = p->N;
  for (int i = 0; i < n; ++i) {
    Vec a = rng.normal_vec(M);
    Vec b = rng.normal_vec(M);
    Vec w = rng.normal_vec(N);
    double phi = rng.uniform(0.0, 2.0 * M_PI);
    double c0 = rng.uniform(-1.0, 1.0);
    if (positive) {
      out.push_back({[a, b, phi](const Vec& u) {
        return 2.0 + 0.4 * std::sin(a.dot(u) + phi) + 0.2 * std::cos(b.dot(u));
      }});
      continue;
    }
    switch (i % 5) {
      case 0:
        out.push_back({[a, c0](const Vec& u) { return c0 + a.dot(u); }});
        break;
      case 1:
        out.push_back({[a, phi](const Vec& u) { return std::sin(a.dot(u) + phi); }});
        break;
      case 2:
        out.push_back({[a](const Vec& u) {
          double s = 0.0;
          for (int l = 0; l < u.size(); ++l) s += a(l) * std::sin(u(l));
          return std::exp(0.25 * s);
        }});
        break;
      case 3:
        out.push_back({[p, w](const Vec& u) { return 0.5 * w.dot(p->eval(u)); }});
        break;
      default:
        out.push_back({[a, b, c0](const Vec& u) {
          double s = a.dot(u);
          return 0.3 * s * s + b.dot(u) + c0;
        }});
        break;
    }
  }
  return out;
}

std::vector<Vec> CheckContext::elliptic_points(int n) {
  std::vector<Vec> out;
  for (int tries = 0; tries < 600 && static_cast<int>(out.size()) < n; ++tries) {
    Vec u = patch->sample_interior(rng, 0.15);
    try {
      ConnectionData c = connection_at(*patch, u, opts.conn);
      if (std::abs(c.kappa.determinant()) >= 1e-3) out.push_back(u);
    } catch (const std::exception&) {
    }
  }
  if (out.empty()) throw DegeneracyError("no elliptic points found on '" + patch->name + "'");
  return out;
}

const std::vector<CheckDef>& identity_checks() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> v;

    v.push_back({"frame_orthonormality",
                 "e e^T = I, det e = +1, normal row of b = 0, Gamma_ijl + Gamma_jil = 0",
                 1e-8, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     upd(r, (c.fr.e * c.fr.e.transpose() - Mat::Identity(c.N, c.N))
                                .cwiseAbs()
                                .maxCoeff());
                     upd(r, std::abs(c.fr.e.determinant() - 1.0));
                     upd(r, c.fr.b.row(c.N - 1).cwiseAbs().maxCoeff());
                     for (int i = 1; i <= c.N; ++i)
                       for (int j = 1; j <= c.N; ++j)
                         for (int l = 1; l <= c.M; ++l)
                           upd(r, c.gamma(i, j, l) + c.gamma(j, i, l));
                     upd(r, (c.fr.g - c.fr.b.topRows(c.M).transpose() * c.fr.b.topRows(c.M))
                                .cwiseAbs()
                                .maxCoeff());
                   }
                   return r;
                 }});

    v.push_back({"structure_equations",
                 "d w_j = sum_{m<s} Q_mjs w_m^w_s and d w_ij = sum_{k<l} R_ijkl w_k^w_l",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     const int N = c.N, M = c.M;
                     // coordinate derivatives of the coefficient fields
                     std::vector<Mat> db(static_cast<std::size_t>(M));
                     std::vector<NdTable> dG(static_cast<std::size_t>(M));
                     for (int a = 0; a < M; ++a) {
                       double h = ctx.opts.outer_step * std::max(1.0, std::abs(u(a)));
                       Vec up = u, dn = u;
                       up(a) += h;
                       dn(a) -= h;
                       ConnectionData cp = connection_at(p, up, ctx.opts.conn);
                       ConnectionData cm = connection_at(p, dn, ctx.opts.conn);
                       db[static_cast<std::size_t>(a)] = (cp.fr.b - cm.fr.b) / (2.0 * h);
                       NdTable d({N, N, M});
                       for (int i = 1; i <= N; ++i)
                         for (int j = 1; j <= N; ++j)
                           for (int l = 1; l <= M; ++l)
                             d(i, j, l) = (cp.gamma(i, j, l) - cm.gamma(i, j, l)) / (2.0 * h);
                       dG[static_cast<std::size_t>(a)] = d;
                     }
                     const Mat& b = c.fr.b;
                     for (int a1 = 0; a1 < M; ++a1)
                       for (int a2 = a1 + 1; a2 < M; ++a2) {
                         for (int j = 1; j <= N; ++j) {
                           double lhs = db[static_cast<std::size_t>(a1)](j - 1, a2) -
                                        db[static_cast<std::size_t>(a2)](j - 1, a1);
                           double rhs = 0.0;
                           for (int m = 1; m <= N; ++m)
                             for (int s = m + 1; s <= N; ++s) {
                               double bm1 = m <= M ? b(m - 1, a1) : 0.0;
                               double bm2 = m <= M ? b(m - 1, a2) : 0.0;
                               double bs1 = s <= M ? b(s - 1, a1) : 0.0;
                               double bs2 = s <= M ? b(s - 1, a2) : 0.0;
                               rhs += c.Qv(m, j, s) * (bm1 * bs2 - bm2 * bs1);
                             }
                           upd(r, lhs - rhs);
                         }
                         for (int i = 1; i <= N; ++i)
                           for (int j = 1; j <= N; ++j) {
                             double lhs = dG[static_cast<std::size_t>(a1)](i, j, a2 + 1) -
                                          dG[static_cast<std::size_t>(a2)](i, j, a1 + 1);
                             double rhs = 0.0;
                             for (int k = 1; k <= M; ++k)
                               for (int l = k + 1; l <= M; ++l)
                                 rhs += c.Rcurv(i, j, k, l) *
                                        (b(k - 1, a1) * b(l - 1, a2) - b(k - 1, a2) * b(l - 1, a1));
                             upd(r, lhs - rhs);
                           }
                       }
                   }
                   return r;
                 }});

    v.push_back({"gradient_reconstruction",
                 "df(du) = sum_k (grad_k f) w_k(du); grad of the position coordinates = frame rows",
                 1e-6, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   auto fs = ctx.fields(4);
                   for (const Vec& u : ctx.points) {
                     FrameData fr = frame_at(p, u);
                     for (const auto& f : fs) {
                       Vec grad = pfaff_gradient(f, fr, u, ctx.opts.field_step);
                       for (int rep = 0; rep < 5; ++rep) {
                         Vec du = ctx.rng.normal_vec(p.M);
                         du *= 3e-4 / du.norm();
                         double df = (f(u + du) - f(u - du)) / 2.0;
                         double recon = 0.0;
                         for (int k = 1; k <= p.M; ++k)
                           recon += grad(k - 1) * fr.b.row(k - 1).dot(du);
                         upd(r, (df - recon) / (1e-3 + std::abs(df)));
                       }
                     }
                     // grad of each ambient coordinate vs the tangential frame rows
                     for (int c = 0; c < p.N; ++c) {
                       ScalarField xc{[&p, c](const Vec& uu) { return p.eval(uu)(c); }};
                       Vec g = pfaff_gradient(xc, fr, u, ctx.opts.field_step);
                       for (int k = 1; k <= p.M; ++k) upd(r, g(k - 1) - fr.e(k - 1, c));
                     }
                   }
                   return r;
                 }});

    v.push_back({"commutator",
                 "grad_l grad_m f - grad_m grad_l f + sum_k (grad_k f) Q_lkm = 0 (tangential pairs)",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(5);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (const auto& f : fs) {
                       Mat hess = pfaff_hessian(f, *ctx.patch, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double scale = 1.0 + hess.cwiseAbs().maxCoeff() + grad.cwiseAbs().maxCoeff();
                       for (int l = 1; l <= c.M; ++l)
                         for (int m = l + 1; m <= c.M; ++m) {
                           double acc = hess(l - 1, m - 1) - hess(m - 1, l - 1);
                           for (int k = 1; k <= c.N; ++k) acc += grad(k - 1) * c.Qv(l, k, m);
                           upd(r, acc / scale);
                         }
                     }
                   }
                   return r;
                 }});

    v.push_back({"antisym_lambda_commutator",
                 "sum_ij lam_ij grad_i grad_j f + sum_ijk lam_ij q_ikj grad_k f = 0, lam antisymmetric",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(3);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat lam = random_antisym(ctx.rng, c.N, false);
                     for (const auto& f : fs) {
                       Mat hess = pfaff_hessian(f, *ctx.patch, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double acc = 0.0;
                       for (int i = 1; i <= c.N; ++i)
                         for (int j = 1; j <= c.N; ++j) {
                           acc += lam(i - 1, j - 1) * hess(i - 1, j - 1);
                           for (int k = 1; k <= c.N; ++k)
                             acc += lam(i - 1, j - 1) * c.qv(i, k, j) * grad(k - 1);
                         }
                       upd(r, acc);
                     }
                   }
                   return r;
                 }});

    v.push_back({"curvature_two_routes",
                 "grad_l q_ikm - grad_m q_ikl + sum_s q_iks Q_lsm = -sum_s rot_lm(q_isl q_ksm)",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     auto [Ra, Rb] = curvature_two_ways(*ctx.patch, u, ctx.opts.conn);
                     upd(r, (Ra - Rb).max_abs());
                   }
                   return r;
                 }});

    v.push_back({"curvature_antisymmetry",
                 "R_ijlm = -R_jilm and R_ijlm = -R_ijml",
                 1e-8, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (int i = 1; i <= c.N; ++i)
                       for (int j = 1; j <= c.N; ++j)
                         for (int l = 1; l <= c.M; ++l)
                           for (int m = 1; m <= c.M; ++m) {
                             upd(r, c.Rcurv(i, j, l, m) + c.Rcurv(j, i, l, m));
                             upd(r, c.Rcurv(i, j, l, m) + c.Rcurv(i, j, m, l));
                           }
                   }
                   return r;
                 }});

    v.push_back({"semicolon_curvature",
                 "q_ik{m};l - q_ik{l};m = R_iklm",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     NdTable nq = connection_gradient(p, u, c, ctx.opts.conn);
                     for (int i = 1; i <= c.N; ++i)
                       for (int k = 1; k <= c.N; ++k)
                         for (int l = 1; l <= c.M; ++l)
                           for (int m = 1; m <= c.M; ++m) {
                             // bracketed slot is the form slot of q
                             double sm_l = nq(i, k, m, l);
                             for (int nu = 1; nu <= c.M; ++nu)
                               sm_l -= c.qv(m, nu, l) * c.q(i, k, nu);
                             double sl_m = nq(i, k, l, m);
                             for (int nu = 1; nu <= c.M; ++nu)
                               sl_m -= c.qv(l, nu, m) * c.q(i, k, nu);
                             upd(r, sm_l - sl_m - c.Rcurv(i, k, l, m));
                           }
                   }
                   return r;
                 }});

    v.push_back({"t_tensor",
                 "rot_lm(grad_l q_ijm + sum_s q_isl q_jsm) = -sum_s q_ijs Q_lsm",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     NdTable nq = connection_gradient(*ctx.patch, u, c, ctx.opts.conn);
                     for (int i = 1; i <= c.N; ++i)
                       for (int j = 1; j <= c.N; ++j)
                         for (int l = 1; l <= c.M; ++l)
                           for (int m = 1; m <= c.M; ++m) {
                             double rot = nq(i, j, m, l) - nq(i, j, l, m);
                             for (int s = 1; s <= c.N; ++s)
                               rot += c.qv(i, s, l) * c.qv(j, s, m) -
                                      c.qv(i, s, m) * c.qv(j, s, l);
                             double alg = 0.0;
                             for (int s = 1; s <= c.M; ++s) alg -= c.q(i, j, s) * c.Qv(l, s, m);
                             upd(r, rot - alg);
                           }
                   }
                   return r;
                 }});

    v.push_back({"frame_second_derivative",
                 "<grad_k grad_k e_m, e_m> = -sum_s q_msk^2",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (int m = 1; m <= c.N; ++m) {
                       Vec em = c.fr.vec(m);
                       for (int k = 1; k <= c.M; ++k) {
                         double lhs = 0.0;
                         for (int cc = 0; cc < c.N; ++cc) {
                           ScalarField comp{[&p, m, cc](const Vec& uu) {
                             return frame_at(p, uu).e(m - 1, cc);
                           }};
                           Mat hess = pfaff_hessian(comp, p, c, u, ctx.opts);
                           lhs += hess(k - 1, k - 1) * em(cc);
                         }
                         double rhs = 0.0;
                         for (int s = 1; s <= c.N; ++s) rhs -= c.q(m, s, k) * c.q(m, s, k);
                         upd(r, lhs - rhs);
                       }
                     }
                   }
                   return r;
                 }});

    v.push_back({"covariant_frame_components",
                 "Y_{l;k} = <grad_k Y, e_l>; position components satisfy f_{k;l} = delta_kl",
                 1e-5, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   Vec cvec = ctx.rng.normal_vec(p.N);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     // frame components of a constant ambient vector: the
                     // covariant derivative must vanish
                     CoeffField Yc = [&p, cvec](const Vec& uu) {
                       return Vec(frame_at(p, uu).e * cvec);
                     };
                     Mat nab = nabla_coeffs(Yc, c.fr, u, ctx.opts.outer_step);
                     Vec Y = Yc(u);
                     for (int l = 1; l <= c.N; ++l)
                       for (int k = 1; k <= c.M; ++k) {
                         double acc = nab(k - 1, l - 1);
                         for (int s = 1; s <= c.N; ++s) acc -= c.qv(l, s, k) * Y(s - 1);
                         upd(r, acc);
                       }
                     // position components
                     CoeffField Fc = [&p](const Vec& uu) {
                       FrameData fr = frame_at(p, uu);
                       return Vec(fr.e * fr.x);
                     };
                     Mat nabF = nabla_coeffs(Fc, c.fr, u, ctx.opts.outer_step);
                     Vec F = Fc(u);
                     for (int k = 1; k <= c.N; ++k)
                       for (int l = 1; l <= c.M; ++l) {
                         double acc = nabF(l - 1, k - 1);
                         for (int s = 1; s <= c.N; ++s) acc -= c.qv(k, s, l) * F(s - 1);
                         upd(r, acc - (k == l ? 1.0 : 0.0));
                       }
                   }
                   return r;
                 }});

    v.push_back({"theta_antisym_split",
                 "Theta1_lm(Y) = Y_{m;l} - Y_{l;m}",
                 1e-10, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const int N = ctx.patch->N;
                   Vec a = ctx.rng.normal_vec(ctx.patch->M);
                   CoeffField Y = [N, a](const Vec& uu) {
                     Vec y(N);
                     for (int k = 0; k < N; ++k) y(k) = std::sin(a.dot(uu) + 0.7 * k);
                     return y;
                   };
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat nab = nabla_coeffs(Y, c.fr, u, ctx.opts.outer_step);
                     Vec Yv = Y(u);
                     for (int l = 1; l <= c.N; ++l)
                       for (int m = l + 1; m <= c.N; ++m) {
                         double theta = theta_from_tables(Yv, nab, c, l, m);
                         auto semi = [&](int jj, int ll) {
                           double acc = nab(ll - 1, jj - 1);
                           for (int k = 1; k <= c.N; ++k) acc -= c.qv(jj, k, ll) * Yv(k - 1);
                           return acc;
                         };
                         upd(r, theta - (semi(m, l) - semi(l, m)));
                       }
                   }
                   return r;
                 }});

    v.push_back({"exact_form_closure",
                 "Theta2_lm(dg) = 0",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(3);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (const auto& g : fs) {
                       Mat hess = pfaff_hessian(g, *ctx.patch, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(g, c.fr, u, ctx.opts.field_step);
                       for (int l = 1; l <= c.N; ++l)
                         for (int m = l + 1; m <= c.N; ++m) {
                           double acc = hess(l - 1, m - 1) - hess(m - 1, l - 1);
                           for (int k = 1; k <= c.N; ++k) acc += grad(k - 1) * c.Qv(l, k, m);
                           upd(r, acc);
                         }
                     }
                   }
                   return r;
                 }});

    v.push_back({"curvature_form_theta",
                 "Theta2_lm(w_ij) = R_ijlm",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (int i = 1; i <= c.N; ++i)
                       for (int j = i + 1; j <= c.N; ++j) {
                         CoeffField a = [&p, i, j, &ctx](const Vec& uu) {
                           ConnectionData cc = connection_at(p, uu, ctx.opts.conn);
                           Vec coeff = Vec::Zero(cc.N);
                           for (int k = 1; k <= cc.M; ++k) coeff(k - 1) = cc.q(i, j, k);
                           return coeff;
                         };
                         for (int l = 1; l <= c.M; ++l)
                           for (int m = l + 1; m <= c.M; ++m)
                             upd(r, theta2(a, l, m, p, c, u, ctx.opts.outer_step) -
                                        c.Rcurv(i, j, l, m));
                       }
                   }
                   return r;
                 }});

    v.push_back({"theta_product_rule",
                 "Theta2_lm(f w) = det[grad f; a] + f Theta2_lm(w)",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   auto fs = ctx.fields(2);
                   Vec aa = ctx.rng.normal_vec(p.M);
                   CoeffField form = [&p, aa](const Vec& uu) {
                     Vec coeff(p.N);
                     for (int k = 0; k < p.N; ++k) coeff(k) = std::cos(aa.dot(uu) + 0.4 * k);
                     return coeff;
                   };
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (const auto& f : fs) {
                       CoeffField scaled = [&form, &f](const Vec& uu) {
                         return Vec(f(uu) * form(uu));
                       };
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       Vec av = form(u);
                       double fv = f(u);
                       for (int l = 1; l <= c.N; ++l)
                         for (int m = l + 1; m <= c.N; ++m) {
                           double lhs = theta1(scaled, l, m, p, c, u, ctx.opts.outer_step);
                           double det = grad(l - 1) * av(m - 1) - grad(m - 1) * av(l - 1);
                           double rhs = det + fv * theta1(form, l, m, p, c, u, ctx.opts.outer_step);
                           upd(r, lhs - rhs);
                         }
                     }
                   }
                   return r;
                 }});

    v.push_back({"eps_contraction_null",
                 "sum_k R_k A_k = 0 and sum_s A^lam_s R^lam_s = 0",
                 1e-10, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     upd(r, c.R.dot(c.A));
                     Mat lam = random_general(ctx.rng, c.N, false);
                     upd(r, A_lambda(lam, c).dot(R_lambda(lam, c)));
                     upd(r, A_lambda_star(lam, c).dot(R_lambda_star(lam, c)));
                   }
                   return r;
                 }});

    v.push_back({"beltrami_expansion",
                 "pairwise expansion of Delta2 equals (N-1) sum grad2_kk - (1/(N-1)) sum R_k grad_k",
                 1e-8, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(3);
                   for (const Vec& u : ctx.points)
                     for (const auto& f : fs) {
                       ConnectionData c = ctx.conn(u);
                       upd(r, beltrami2(f, *ctx.patch, c, u, ctx.opts) -
                                  beltrami2_expansion(f, *ctx.patch, c, u, ctx.opts));
                     }
                   return r;
                 }});

    v.push_back({"dk_product",
                 "D_k(fg) = f D_k g + g D_k f + f g R_k/(N-1)",
                 1e-6, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   auto gs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     const int N = c.N;
                     for (const auto& f : fs)
                       for (const auto& g : gs) {
                         Vec gf = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                         Vec gg = pfaff_gradient(g, c.fr, u, ctx.opts.field_step);
                         Vec gfg = pfaff_gradient(product_field(f, g), c.fr, u, ctx.opts.field_step);
                         double fv = f(u), gv = g(u);
                         Vec Df = d_all(fv, gf, c.R, N);
                         Vec Dg = d_all(gv, gg, c.R, N);
                         Vec Dfg = d_all(fv * gv, gfg, c.R, N);
                         for (int k = 0; k < N; ++k) {
                           upd(r, Dfg(k) - fv * Dg(k) - gv * Df(k) - fv * gv * c.R(k) / (N - 1));
                           upd(r, fv * Dg(k) - gv * Df(k) -
                                      (N - 1) * (fv * gg(k) - gv * gf(k)));
                         }
                       }
                   }
                   return r;
                 }});

    v.push_back({"dk_commutator",
                 "[D_k, grad_k] f = (grad_k R_k/(N-1)) f",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   auto fs = ctx.fields(3);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat nR = nabla_R(p, c, u, ctx.opts);
                     for (const auto& f : fs) {
                       Mat hess = pfaff_hessian(f, p, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double fv = f(u);
                       // grad of the D-vector field
                       Mat dD(c.M, c.N);
                       for (int a = 0; a < c.M; ++a) {
                         double h = ctx.opts.outer_step * std::max(1.0, std::abs(u(a)));
                         Vec up = u, dn = u;
                         up(a) += h;
                         dn(a) -= h;
                         ConnectionData cp = connection_at(p, up, ctx.opts.conn);
                         ConnectionData cm = connection_at(p, dn, ctx.opts.conn);
                         Vec Dp = d_all(f(up), pfaff_gradient(f, cp.fr, up, ctx.opts.field_step),
                                        cp.R, c.N);
                         Vec Dm = d_all(f(dn), pfaff_gradient(f, cm.fr, dn, ctx.opts.field_step),
                                        cm.R, c.N);
                         dD.row(a) = ((Dp - Dm) / (2.0 * h)).transpose();
                       }
                       Mat nabD = Mat::Zero(c.N, c.N);
                       nabD.topRows(c.M) = c.fr.Binv.transpose() * dD;
                       for (int k = 1; k <= c.N; ++k) {
                         double Dgrad = (c.N - 1) * hess(k - 1, k - 1) -
                                        c.R(k - 1) * grad(k - 1) / (c.N - 1);
                         double bracket = Dgrad - nabD(k - 1, k - 1);
                         upd(r, bracket - nR(k - 1, k - 1) * fv / (c.N - 1));
                       }
                     }
                   }
                   return r;
                 }});

    v.push_back({"d_assembly",
                 "sum_k (D_k f) e_k = (N-1) grad f - (1/(N-1)) f R",
                 1e-12, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (const auto& f : fs) {
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       Vec D = d_all(f(u), grad, c.R, c.N);
                       Vec lhs = Vec::Zero(c.N), rhs = Vec::Zero(c.N);
                       for (int k = 1; k <= c.N; ++k) {
                         lhs += D(k - 1) * c.fr.vec(k);
                         rhs += ((c.N - 1) * grad(k - 1) - f(u) * c.R(k - 1) / (c.N - 1)) *
                                c.fr.vec(k);
                       }
                       upd(r, (lhs - rhs).cwiseAbs().maxCoeff());
                     }
                   }
                   return r;
                 }});

    v.push_back({"delta_identity_lambda",
                 "lam = identity reproduces the Beltrami operator",
                 1e-10, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (const auto& f : fs)
                       upd(r, beltrami_lambda(f, lambda_delta(c.N), *ctx.patch, c, u, ctx.opts) -
                                  beltrami2(f, *ctx.patch, c, u, ctx.opts));
                   }
                   return r;
                 }});

    v.push_back({"epsilon_lambda_closed_form",
                 "Delta^(eps) f = sum_k ((N-1) A_k + (1/(N-1)) sum_s eps_ks R_s) grad_k f",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(3);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (const auto& f : fs) {
                       double lhs =
                           beltrami_lambda(f, lambda_epsilon(c.N), *ctx.patch, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double rhs = 0.0;
                       for (int k = 1; k <= c.N; ++k) {
                         double coef = (c.N - 1) * c.A(k - 1);
                         for (int s = 1; s <= c.N; ++s)
                           coef += eps_sign(k, s) * c.R(s - 1) / (c.N - 1);
                         rhs += coef * grad(k - 1);
                       }
                       upd(r, lhs - rhs);
                     }
                   }
                   return r;
                 }});

    v.push_back({"lambda_expansion",
                 "Delta^(lam) f = (N-1) sum lam grad2 - (1/(N-1)) sum lam R grad; position "
                 "components match the closed form",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat lam = random_general(ctx.rng, c.N, false);
                     LambdaField lf = lambda_constant(lam);
                     for (const auto& f : fs) {
                       Mat hess = pfaff_hessian(f, *ctx.patch, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double rhs = 0.0;
                       for (int i = 1; i <= c.N; ++i)
                         for (int j = 1; j <= c.N; ++j)
                           rhs += lam(i - 1, j - 1) *
                                  ((c.N - 1) * hess(i - 1, j - 1) -
                                   c.R(i - 1) * grad(j - 1) / (c.N - 1));
                       upd(r, beltrami_lambda(f, lf, *ctx.patch, c, u, ctx.opts) - rhs);
                     }
                     Vec sig = sigma_lambda(lam, c);
                     Vec sig_fd = delta_lambda_position_fd(lam, *ctx.patch, c, u, ctx.opts);
                     Vec proj(c.N);
                     for (int k = 1; k <= c.N; ++k) proj(k - 1) = sig_fd.dot(c.fr.vec(k));
                     upd(r, (sig - proj).cwiseAbs().maxCoeff());
                   }
                   return r;
                 }});

    v.push_back({"antisym_grad_pairing",
                 "Delta^(lam) f = <Delta^(lam) x, grad f> for antisymmetric lam",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(3);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat lam = random_antisym(ctx.rng, c.N, false);
                     Vec sig = sigma_lambda(lam, c);
                     for (const auto& f : fs) {
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double lhs =
                           beltrami_lambda(f, lambda_constant(lam), *ctx.patch, c, u, ctx.opts);
                       upd(r, lhs - sig.dot(grad));
                     }
                   }
                   return r;
                 }});

    v.push_back({"antisym_lambda_R_pairing",
                 "<Delta^(lam) x, R> = -(N-1) sum_k A^lam_k R_k for antisymmetric lam",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat lam = random_antisym(ctx.rng, c.N, false);
                     Vec fd = delta_lambda_position_fd(lam, *ctx.patch, c, u, ctx.opts);
                     Vec Rbar = Vec::Zero(c.N);
                     for (int k = 1; k <= c.N; ++k) Rbar += c.R(k - 1) * c.fr.vec(k);
                     double lhs = fd.dot(Rbar);
                     double rhs = -(c.N - 1) * A_lambda(lam, c).dot(c.R);
                     upd(r, lhs - rhs);
                   }
                   return r;
                 }});

    v.push_back({"antisym_product_rule",
                 "Delta^(lam)(fg) = f Delta^(lam) g + g Delta^(lam) f for antisymmetric lam",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   auto gs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     LambdaField lf = lambda_constant(random_antisym(ctx.rng, c.N, false));
                     for (const auto& f : fs)
                       for (const auto& g : gs) {
                         double lhs = beltrami_lambda(product_field(f, g), lf, *ctx.patch, c, u,
                                                   ctx.opts);
                         double rhs = f(u) * beltrami_lambda(g, lf, *ctx.patch, c, u, ctx.opts) +
                                      g(u) * beltrami_lambda(f, lf, *ctx.patch, c, u, ctx.opts);
                         upd(r, lhs - rhs);
                       }
                   }
                   return r;
                 }});

    v.push_back({"sigma_lambda_split",
                 "sigma^lam_k = -sum_{i<j} Lambda_kij for antisymmetric lam; general lam "
                 "splits into the M/Lambda pair sums plus the diagonal term; "
                 "H^lam = (H^{lam+*} - H^{lam-})/2",
                 1e-10, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     const int N = c.N;
                     Mat lamA = random_antisym(ctx.rng, N, false);
                     NdTable L = Lambda_table(lamA, c);
                     Vec sig = sigma_lambda(lamA, c);
                     for (int k = 1; k <= N; ++k) {
                       double acc = 0.0;
                       for (int i = 1; i <= N; ++i)
                         for (int j = i + 1; j <= N; ++j) acc -= L(k, i, j);
                       upd(r, sig(k - 1) - acc);
                     }
                     Mat lam = random_general(ctx.rng, N, false);
                     NdTable Lm = Lambda_table(antisym_part(lam), c);
                     NdTable Mp = M_table(sym_part(lam), c);
                     Vec sigg = sigma_lambda(lam, c);
                     for (int k = 1; k <= N; ++k) {
                       double acc = 0.0;
                       for (int i = 1; i <= N; ++i) {
                         for (int j = i + 1; j <= N; ++j) acc += Mp(k, i, j) - Lm(k, i, j);
                         acc += (N - 1) * lam(i - 1, i - 1) * c.qv(i, k, i);
                       }
                       upd(r, sigg(k - 1) - acc);
                     }
                     Vec H = H_lambda(lam, c);
                     Vec Hs = H_lambda_Qstar(sym_part(lam), c);
                     Vec Hm = H_lambda_Q(antisym_part(lam), c);
                     upd(r, (H - 0.5 * (Hs - Hm)).cwiseAbs().maxCoeff());
                   }
                   return r;
                 }});

    v.push_back({"gspace_condition",
                 "<Delta^(g) x, e_k> = H_k - (1/(N-1)) sum_i g_ik R_i",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat lam = Mat::Zero(c.N, c.N);
                     lam.topLeftCorner(c.M, c.M) = c.fr.g;
                     Vec H = H_lambda(lam, c);
                     Vec cond(c.N);
                     for (int k = 1; k <= c.N; ++k) {
                       double acc = H(k - 1);
                       for (int i = 1; i <= c.N; ++i)
                         acc -= lam(i - 1, k - 1) * c.R(i - 1) / (c.N - 1);
                       cond(k - 1) = acc;
                     }
                     upd(r, (sigma_lambda(lam, c) - cond).cwiseAbs().maxCoeff());
                     Vec fd = delta_lambda_position_fd(lam, *ctx.patch, c, u, ctx.opts);
                     for (int k = 1; k <= c.N; ++k)
                       upd(r, fd.dot(c.fr.vec(k)) - cond(k - 1));
                   }
                   return r;
                 }});

    v.push_back({"symmetric_semicolon_form",
                 "Delta^(lam) f = (N-1) sum*_{i<=j} lam_ij (grad_j f)_{;i} + <Delta^(lam) x, grad f>, "
                 "lam symmetric tangential",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat lam = random_sym(ctx.rng, c.N, true);
                     for (const auto& f : fs) {
                       Mat hess = pfaff_hessian(f, *ctx.patch, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       auto semi = [&](int i, int j) {  // (grad_j f)_{;i}
                         double acc = hess(i - 1, j - 1);
                         for (int k = 1; k <= c.N; ++k) acc -= c.qv(j, k, i) * grad(k - 1);
                         return acc;
                       };
                       double rhs = 0.0;
                       for (int i = 1; i <= c.N; ++i)
                         for (int j = i; j <= c.N; ++j)
                           rhs += (i == j ? 1.0 : 2.0) * lam(i - 1, j - 1) * (c.N - 1) *
                                  semi(i, j);
                       rhs += sigma_lambda(lam, c).dot(grad);
                       upd(r, beltrami_lambda(f, lambda_constant(lam), *ctx.patch, c, u, ctx.opts) -
                                  rhs);
                     }
                   }
                   return r;
                 }});

    v.push_back({"general_semicolon_form",
                 "Delta^(lam) f via the symmetric part semicolon sum plus <Delta^(lam) x, grad f>",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat lam = random_general(ctx.rng, c.N, true);
                     Mat lamS = sym_part(lam);
                     for (const auto& f : fs) {
                       Mat hess = pfaff_hessian(f, *ctx.patch, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double rhs = 0.0;
                       for (int i = 1; i <= c.N; ++i)
                         for (int j = i; j <= c.N; ++j) {
                           double semi = hess(i - 1, j - 1);
                           for (int k = 1; k <= c.N; ++k) semi -= c.qv(j, k, i) * grad(k - 1);
                           rhs += (i == j ? 1.0 : 2.0) * lamS(i - 1, j - 1) * (c.N - 1) * semi;
                         }
                       rhs += sigma_lambda(lam, c).dot(grad);
                       upd(r, beltrami_lambda(f, lambda_constant(lam), *ctx.patch, c, u, ctx.opts) -
                                  rhs);
                     }
                   }
                   return r;
                 }});

    v.push_back({"metric_laplacian_split",
                 "Delta^(g) f = (N-1) sum g_ij grad2_ij f + <Delta^(g) x - H, grad f>",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat lam = Mat::Zero(c.N, c.N);
                     lam.topLeftCorner(c.M, c.M) = c.fr.g;
                     Vec H = H_lambda(lam, c);
                     Vec sig = sigma_lambda(lam, c);
                     for (const auto& f : fs) {
                       Mat hess = pfaff_hessian(f, *ctx.patch, c, u, ctx.opts);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double rhs = 0.0;
                       for (int i = 1; i <= c.N; ++i)
                         for (int j = 1; j <= c.N; ++j)
                           rhs += (c.N - 1) * lam(i - 1, j - 1) * hess(i - 1, j - 1);
                       rhs += (sig - H).dot(grad);
                       upd(r, beltrami_lambda(f, lambda_constant(lam), *ctx.patch, c, u, ctx.opts) -
                                  rhs);
                     }
                   }
                   return r;
                 }});

    v.push_back({"bracket_antisym",
                 "sum lam_ij [D_i, grad_j] f + (1/f) sum_k A^lam_k D_k(f^2) = "
                 "-(f/(2(N-1))) sum lam_ij Theta2_ij(R), lam antisymmetric tangential",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2, true);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat nR = nabla_R(*ctx.patch, c, u, ctx.opts);
                     Mat lam = random_antisym(ctx.rng, c.N, true);
                     Vec Alam = A_lambda(lam, c);
                     for (const auto& f : fs) {
                       double fv = f(u);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double P = pi_lambda(f, lambda_constant(lam), *ctx.patch, c, u, ctx.opts);
                       double mid = 0.0;
                       for (int k = 1; k <= c.N; ++k) {
                         double Dk_f2 = (c.N - 1) * 2.0 * fv * grad(k - 1) -
                                        c.R(k - 1) * fv * fv / (c.N - 1);
                         mid += Alam(k - 1) * Dk_f2;
                       }
                       double rhs = 0.0;
                       for (int i = 1; i <= c.N; ++i)
                         for (int j = 1; j <= c.N; ++j)
                           rhs += lam(i - 1, j - 1) * theta_R(c, nR, i, j);
                       rhs *= -fv / (2.0 * (c.N - 1));
                       upd(r, P + mid / fv - rhs);
                     }
                   }
                   return r;
                 }});

    v.push_back({"pi_general",
                 "Pi^(lam) f split into the antisymmetric bracket part and the symmetric "
                 "grad R part, lam tangential",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2, true);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat nR = nabla_R(*ctx.patch, c, u, ctx.opts);
                     Mat lam = random_general(ctx.rng, c.N, true);
                     Mat lamA = antisym_part(lam), lamS = sym_part(lam);
                     Vec Hminus = H_lambda_Q(lamA, c);
                     for (const auto& f : fs) {
                       double fv = f(u);
                       Vec grad = pfaff_gradient(f, c.fr, u, ctx.opts.field_step);
                       double lhs = pi_lambda(f, lambda_constant(lam), *ctx.patch, c, u, ctx.opts);
                       double rhs = 0.0;
                       for (int k = 1; k <= c.N; ++k) {
                         double Dk_f2 = (c.N - 1) * 2.0 * fv * grad(k - 1) -
                                        c.R(k - 1) * fv * fv / (c.N - 1);
                         rhs -= Hminus(k - 1) * Dk_f2 / (2.0 * fv * (c.N - 1));
                       }
                       double thetaA = 0.0, gradRS = 0.0;
                       for (int i = 1; i <= c.N; ++i)
                         for (int j = 1; j <= c.N; ++j) {
                           thetaA += lamA(i - 1, j - 1) * theta_R(c, nR, i, j);
                           gradRS += lamS(i - 1, j - 1) * nR(j - 1, i - 1);
                         }
                       rhs += -fv * thetaA / (2.0 * (c.N - 1)) + fv * gradRS / (c.N - 1);
                       upd(r, lhs - rhs);
                     }
                   }
                   return r;
                 }});

    v.push_back({"pi_symmetric",
                 "Pi^(lam) f = eta^(lam) f for symmetric tangential lam",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat nR = nabla_R(*ctx.patch, c, u, ctx.opts);
                     Mat lam = random_sym(ctx.rng, c.N, true);
                     double eta = eta_lambda(lam, nR, c.N);
                     for (const auto& f : fs)
                       upd(r, pi_lambda(f, lambda_constant(lam), *ctx.patch, c, u, ctx.opts) -
                                  eta * f(u));
                   }
                   return r;
                 }});

    v.push_back({"pi_metric",
                 "Pi f = eta f with eta = (1/(N-1)) sum g_ij grad_j R_i",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     Mat nR = nabla_R(*ctx.patch, c, u, ctx.opts);
                     Mat lam = Mat::Zero(c.N, c.N);
                     lam.topLeftCorner(c.M, c.M) = c.fr.g;
                     double eta = eta_lambda(lam, nR, c.N);
                     for (const auto& f : fs)
                       upd(r, pi_lambda(f, lambda_constant(lam), *ctx.patch, c, u, ctx.opts) -
                                  eta * f(u));
                   }
                   return r;
                 }});

    v.push_back({"vector_product_rule",
                 "Delta2<V1,V2> = <Delta2 V1, V2> + <V1, Delta2 V2> + 2(N-1) sum_k <grad_k V1, grad_k V2>",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   Vec a1 = ctx.rng.normal_vec(p.M), a2 = ctx.rng.normal_vec(p.M);
                   AmbField V1 = [&p, a1](const Vec& uu) {
                     Vec v(p.N);
                     for (int cidx = 0; cidx < p.N; ++cidx)
                       v(cidx) = std::sin(a1.dot(uu) + 0.5 * cidx);
                     return v;
                   };
                   AmbField V2 = [&p, a2](const Vec& uu) {
                     Vec v(p.N);
                     for (int cidx = 0; cidx < p.N; ++cidx)
                       v(cidx) = std::cos(a2.dot(uu) + 0.3 * cidx);
                     return v;
                   };
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     ScalarField dot{[&V1, &V2](const Vec& uu) { return V1(uu).dot(V2(uu)); }};
                     double lhs = beltrami2(dot, p, c, u, ctx.opts);
                     Vec b1 = beltrami2_ambient(V1, p, c, u, ctx.opts);
                     Vec b2 = beltrami2_ambient(V2, p, c, u, ctx.opts);
                     auto n1 = nabla_ambient(V1, c.fr, u, ctx.opts.outer_step);
                     auto n2 = nabla_ambient(V2, c.fr, u, ctx.opts.outer_step);
                     double cross = 0.0;
                     for (int k = 0; k < c.N; ++k)
                       cross += n1[static_cast<std::size_t>(k)].dot(n2[static_cast<std::size_t>(k)]);
                     upd(r, lhs - b1.dot(V2(u)) - V1(u).dot(b2) - 2.0 * (c.N - 1) * cross);
                   }
                   return r;
                 }});

    v.push_back({"frame_laplacian_norm",
                 "<Delta2 e_k, e_k> = -(N-1) sum_jl q_kjl^2",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     for (int k = 1; k <= c.N; ++k) {
                       Vec bel = beltrami2_ambient(frame_row_field(p, k), p, c, u, ctx.opts);
                       double rhs = 0.0;
                       for (int j = 1; j <= c.N; ++j)
                         for (int l = 1; l <= c.M; ++l) rhs += c.q(k, j, l) * c.q(k, j, l);
                       upd(r, bel.dot(c.fr.vec(k)) + (c.N - 1) * rhs);
                     }
                   }
                   return r;
                 }});

    v.push_back({"position_laplacian_mean_curvature",
                 "<Delta2 x, e_k> = h_k - R_k/(N-1) tangentially; <Delta2 x, e_N> = h_N; the "
                 "frame-assembled operator matches h*_k in every component",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     OperatorReport rep = invariants_report(p, c, u, ctx.opts);
                     Vec bel = beltrami2_ambient(position_field(p), p, c, u, ctx.opts);
                     for (int k = 1; k <= c.M; ++k)
                       upd(r, bel.dot(c.fr.vec(k)) - rep.hstar(k - 1));
                     upd(r, bel.dot(c.fr.vec(c.N)) - rep.h(c.N - 1));
                     Vec fd = delta_lambda_position_fd(Mat::Identity(c.N, c.N), p, c, u, ctx.opts);
                     for (int k = 1; k <= c.N; ++k)
                       upd(r, fd.dot(c.fr.vec(k)) - rep.hstar(k - 1));
                   }
                   return r;
                 }});

    v.push_back({"normal_laplacian_rstar",
                 "|grad_k e_N|^2 = R*_k/(N-1) and <Delta2 e_N, e_N> = -R*",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     OperatorReport rep = invariants_report(p, c, u, ctx.opts);
                     auto nab = nabla_ambient(frame_row_field(p, c.N), c.fr, u,
                                              ctx.opts.outer_step);
                     for (int k = 1; k <= c.M; ++k)
                       upd(r, nab[static_cast<std::size_t>(k - 1)].squaredNorm() -
                                  rep.Rstar_k(k - 1) / (c.N - 1));
                     Vec bel = beltrami2_ambient(frame_row_field(p, c.N), p, c, u, ctx.opts);
                     upd(r, bel.dot(c.fr.vec(c.N)) + rep.Rstar);
                   }
                   return r;
                 }});

    v.push_back({"spherical_inverse",
                 "sum_j q1_mNj q_Njs = delta_ms; sum_kj q1_kNj qt_Njk = sum_k q1_kNk",
                 1e-8, has_elliptic_points,
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.elliptic_points(std::min(ctx.npoints, 8))) {
                     SphericalData s = spherical_at(*ctx.patch, u, ctx.opts);
                     const int M = s.conn.M;
                     Mat P(M, M);
                     for (int j = 1; j <= M; ++j)
                       for (int t = 1; t <= M; ++t) P(j - 1, t - 1) = s.conn.q(s.conn.N, j, t);
                     upd(r, (s.q1 * P - Mat::Identity(M, M)).cwiseAbs().maxCoeff());
                     // tilde connection consistency and the trace contraction
                     double lhs = 0.0;
                     for (int k = 1; k <= M; ++k)
                       for (int j = 1; j <= M; ++j)
                         lhs += s.q1(k - 1, j - 1) * s.qtilde(s.conn.N, j, k);
                     upd(r, lhs - s.q1.trace());
                   }
                   return r;
                 }});

    v.push_back({"tilde_duality",
                 "grad_s f = sum_k (tilde grad_k f) q_Nks and back",
                 1e-8, has_elliptic_points,
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   auto fs = ctx.fields(3);
                   for (const Vec& u : ctx.elliptic_points(std::min(ctx.npoints, 8))) {
                     SphericalData s = spherical_at(*ctx.patch, u, ctx.opts);
                     const int M = s.conn.M;
                     for (const auto& f : fs) {
                       Vec grad = pfaff_gradient(f, s.conn.fr, u, ctx.opts.field_step);
                       Vec tg = tilde_gradient(f, s, u, ctx.opts);
                       for (int t = 1; t <= M; ++t) {
                         double back = 0.0;
                         for (int k = 1; k <= M; ++k)
                           back += tg(k - 1) * s.conn.q(s.conn.N, k, t);
                         upd(r, grad(t - 1) - back);
                       }
                     }
                   }
                   return r;
                 }});

    v.push_back({"tilde_support",
                 "tilde grad_k <x, e_N> = <x, e_k>",
                 1e-5, has_elliptic_points,
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   ScalarField w{[&p](const Vec& uu) {
                     FrameData fr = frame_at(p, uu);
                     return fr.x.dot(fr.vec(fr.N));
                   }};
                   for (const Vec& u : ctx.elliptic_points(std::min(ctx.npoints, 8))) {
                     SphericalData s = spherical_at(p, u, ctx.opts);
                     OperatorOpts o = ctx.opts;
                     o.field_step = ctx.opts.outer_step;  // w is a derived field
                     Vec tg = tilde_gradient(w, s, u, o);
                     for (int k = 1; k <= s.conn.M; ++k)
                       upd(r, tg(k - 1) - s.conn.fr.x.dot(s.conn.fr.vec(k)));
                   }
                   return r;
                 }});

    v.push_back({"tilde_position",
                 "tilde grad_j x = sum_k q1_kNj e_k",
                 1e-5, has_elliptic_points,
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.elliptic_points(std::min(ctx.npoints, 8))) {
                     SphericalData s = spherical_at(p, u, ctx.opts);
                     for (int j = 1; j <= s.conn.M; ++j) {
                       Vec lhs = tilde_nabla_ambient(position_field(p), j, s, u, ctx.opts);
                       Vec rhs = Vec::Zero(s.conn.N);
                       for (int k = 1; k <= s.conn.M; ++k)
                         rhs += s.q1(k - 1, j - 1) * s.conn.fr.vec(k);
                       upd(r, (lhs - rhs).cwiseAbs().maxCoeff());
                     }
                   }
                   return r;
                 }});

    v.push_back({"third_form_support",
                 "<Delta2_III x, e_N> = -(N-1) sum_l q1_lNl",
                 1e-3, has_elliptic_points,
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.elliptic_points(ctx.npoints))
                     upd(r, third_form_position_residual(*ctx.patch, u, ctx.opts));
                   return r;
                 }});

    v.push_back({"vertical_curvature_routes",
                 "shape quadratic form on the direction = <d tangent/ds, e_N>; invariant under "
                 "curve reparametrization",
                 1e-5, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const std::string& spec : curve_specs_for(*ctx.patch)) {
                     CurveOnSurface c = curve_fixture(*ctx.patch, spec);
                     for (int i = 0; i < 5; ++i) {
                       double t = c.t0 + (0.2 + 0.6 * i / 4.0) * (c.t1 - c.t0);
                       VerticalCurvature vc = vertical_curvature(c, t, ctx.opts);
                       upd(r, vc.quadratic_form - vc.direct);
                       // monotone reparametrization covering the same point
                       CurveOnSurface c2 = c;
                       double alpha = 0.7 + 0.2 * ctx.rng.uniform();
                       auto base = c.u_of_t;
                       double t0 = c.t0, t1 = c.t1;
                       c2.u_of_t = [base, alpha, t0, t1](double tau) {
                         double frac = (tau - t0) / (t1 - t0);
                         return base(t0 + (t1 - t0) * std::pow(frac, alpha));
                       };
                       double frac = (t - c.t0) / (c.t1 - c.t0);
                       double tau = c.t0 + (c.t1 - c.t0) * std::pow(frac, 1.0 / alpha);
                       VerticalCurvature vc2 = vertical_curvature(c2, tau, ctx.opts);
                       upd(r, vc.quadratic_form - vc2.quadratic_form);
                     }
                   }
                   return r;
                 }});

    v.push_back({"direction_sum_trace",
                 "sum over an orthonormal direction set of the vertical curvatures = trace of "
                 "the shape table",
                 1e-5, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     DirectionSumReport rep = direction_sum_check(*ctx.patch, u, ctx.rng, ctx.opts);
                     upd(r, rep.trace_residual);
                     upd(r, rep.set_independence);
                   }
                   return r;
                 }});

    v.push_back({"quadratic_form_sums",
                 "direction sums of combined first/second/third form values match the closed "
                 "q sums",
                 1e-6, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     DirectionSumReport rep = direction_sum_check(*ctx.patch, u, ctx.rng, ctx.opts);
                     upd(r, rep.combo_residual);
                   }
                   return r;
                 }});

    v.push_back({"ik_curvature_matrix",
                 "1/rho_ij is antisymmetric, matches <d t_i/ds, t_j>, and conjugates under "
                 "constant frame rotation",
                 1e-5, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   CurveOnSurface c = curve_fixture(p, curve_specs_for(p).front());
                   CurveFrame fr = default_curve_frame(c, ctx.opts);
                   Mat P = ctx.rng.rotation(p.N);
                   CurveFrame rotated{[fr, P](double t) { return Mat(fr.A_of_t(t) * P); }};
                   for (int i = 0; i < 4; ++i) {
                     double t = c.t0 + (0.25 + 0.5 * i / 3.0) * (c.t1 - c.t0);
                     Mat rho = rho_matrix(c, fr, t, ctx.opts);
                     upd(r, (rho + rho.transpose()).cwiseAbs().maxCoeff());
                     // direct rotation rates of the transported frame
                     double h = c.fd_step();
                     double ds_dt = curve_velocity(c, t).norm();
                     auto ambient = [&](double tt) {
                       Mat At = fr.A_of_t(tt);
                       FrameData sf = frame_at(p, c.u(tt));
                       return Mat(sf.e.transpose() * At);  // column i = t_i ambient
                     };
                     Mat Tp = ambient(t + h), Tm = ambient(t - h), T0 = ambient(t);
                     Mat dT_ds = (Tp - Tm) / (2.0 * h) / ds_dt;
                     Mat direct = dT_ds.transpose() * T0;  // (i,j) = <d t_i/ds, t_j>
                     upd(r, (rho - direct).cwiseAbs().maxCoeff());
                     Mat rho_rot = rho_matrix(c, rotated, t, ctx.opts);
                     upd(r, (rho_rot - P.transpose() * rho * P).cwiseAbs().maxCoeff());
                   }
                   // surface frame along the curve: rates must match the
                   // connection contraction directly
                   CurveFrame idf = identity_curve_frame(p.N);
                   for (int i = 0; i < 3; ++i) {
                     double t = c.t0 + (0.3 + 0.4 * i / 2.0) * (c.t1 - c.t0);
                     ConnectionData conn = connection_at(p, c.u(t), ctx.opts.conn);
                     Vec rates = coframe_rates(c, conn.fr, t);
                     Mat rho = rho_matrix(c, idf, t, ctx.opts);
                     for (int a = 1; a <= p.N; ++a)
                       for (int b = 1; b <= p.N; ++b) {
                         double expect = 0.0;
                         for (int l = 1; l <= p.M; ++l)
                           expect += conn.q(a, b, l) * rates(l - 1);
                         upd(r, rho(a - 1, b - 1) - expect);
                       }
                   }
                   return r;
                 }});

    v.push_back({"curve_dnu",
                 "|D tangent/ds| = sqrt((N-1)^2 k^2 + (dR/ds)^2/(N-1)^2); "
                 "<D tangent/ds, tangent> = -(dR/ds)/(N-1)",
                 1e-4, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const std::string& spec : curve_specs_for(*ctx.patch)) {
                     CurveOnSurface c = curve_fixture(*ctx.patch, spec);
                     for (int i = 0; i < 5; ++i) {
                       double t = c.t0 + (0.2 + 0.6 * i / 4.0) * (c.t1 - c.t0);
                       DnuReport rep = dnu_checks(c, t, ctx.opts);
                       upd(r, rep.kstar_residual);
                       upd(r, rep.pairing_residual);
                     }
                   }
                   return r;
                 }});

    v.push_back({"rigid_motion_invariance",
                 "q, A, R, kappa, K, R*, h, H and |grad f| are unchanged by proper rigid "
                 "ambient motions",
                 1e-6, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   Mat Q = ctx.rng.rotation(p.N);
                   Vec shift = ctx.rng.normal_vec(p.N);
                   SurfacePatch moved = transformed(p, Q, shift);
                   auto fs = ctx.fields(2);
                   for (const Vec& u : ctx.points) {
                     ConnectionData c0 = connection_at(p, u, ctx.opts.conn);
                     ConnectionData c1 = connection_at(moved, u, ctx.opts.conn);
                     upd(r, (c0.q - c1.q).max_abs());
                     upd(r, (c0.A - c1.A).cwiseAbs().maxCoeff());
                     upd(r, (c0.R - c1.R).cwiseAbs().maxCoeff());
                     upd(r, (c0.kappa - c1.kappa).cwiseAbs().maxCoeff());
                     OperatorReport r0 = invariants_report(p, c0, u, ctx.opts);
                     OperatorReport r1 = invariants_report(moved, c1, u, ctx.opts);
                     upd(r, r0.K - r1.K);
                     upd(r, r0.Rstar - r1.Rstar);
                     upd(r, (r0.h - r1.h).cwiseAbs().maxCoeff());
                     upd(r, (r0.H - r1.H).cwiseAbs().maxCoeff());
                     for (const auto& f : fs)
                       upd(r, pfaff_gradient(f, c0.fr, u, ctx.opts.field_step).norm() -
                                  pfaff_gradient(f, c1.fr, u, ctx.opts.field_step).norm());
                   }
                   return r;
                 }});

    v.push_back({"reparam_invariance",
                 "frame-ordered diffeomorphisms leave q, R, kappa, K, R*, h unchanged at "
                 "corresponding points; |grad f|, K, R* survive arbitrary ones",
                 1e-5, {},
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   ReparametrizedPatch tri = reparametrized_triangular(p, ctx.rng);
                   ReparametrizedPatch gen = reparametrized_general(p, ctx.rng);
                   auto fs = ctx.fields(2);
                   Rng vrng(ctx.seed + 99);
                   for (int i = 0; i < std::min<int>(ctx.npoints, 8); ++i) {
                     Vec vpt = tri.patch.sample_interior(vrng, 0.2);
                     Vec upt = tri.to_base(vpt);
                     ConnectionData c0 = connection_at(p, upt, ctx.opts.conn);
                     ConnectionData c1 = connection_at(tri.patch, vpt, ctx.opts.conn);
                     upd(r, (c0.q - c1.q).max_abs());
                     upd(r, (c0.R - c1.R).cwiseAbs().maxCoeff());
                     upd(r, (c0.kappa - c1.kappa).cwiseAbs().maxCoeff());
                     OperatorReport r0 = invariants_report(p, c0, upt, ctx.opts);
                     OperatorReport r1 = invariants_report(tri.patch, c1, vpt, ctx.opts);
                     upd(r, r0.K - r1.K);
                     upd(r, r0.Rstar - r1.Rstar);
                     upd(r, (r0.h - r1.h).cwiseAbs().maxCoeff());

                     Vec vg = gen.patch.sample_interior(vrng, 0.2);
                     Vec ug = gen.to_base(vg);
                     ConnectionData g0 = connection_at(p, ug, ctx.opts.conn);
                     ConnectionData g1 = connection_at(gen.patch, vg, ctx.opts.conn);
                     upd(r, g0.kappa.determinant() - g1.kappa.determinant());
                     OperatorReport s0 = invariants_report(p, g0, ug, ctx.opts);
                     OperatorReport s1 = invariants_report(gen.patch, g1, vg, ctx.opts);
                     upd(r, s0.Rstar - s1.Rstar);
                     for (const auto& f : fs) {
                       ScalarField fv{[&gen, &f](const Vec& vv) { return f(gen.to_base(vv)); }};
                       upd(r, pfaff_gradient(f, g0.fr, ug, ctx.opts.field_step).norm() -
                                  pfaff_gradient(fv, g1.fr, vg, ctx.opts.field_step).norm());
                     }
                   }
                   return r;
                 }});

    v.push_back({"hypersphere_closed_forms",
                 "unit hypersphere: kappa = +-I, R*_k = N-1, |K| = 1, |support| = 1, "
                 "R_iNml = Q_mil, inverse connection = -+I",
                 1e-4, is_unit_hypersphere,
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   const SurfacePatch& p = *ctx.patch;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     const int N = c.N, M = c.M;
                     double plus = (c.kappa - Mat::Identity(M, M)).cwiseAbs().maxCoeff();
                     double minus = (c.kappa + Mat::Identity(M, M)).cwiseAbs().maxCoeff();
                     upd(r, std::min(plus, minus));
                     OperatorReport rep = invariants_report(p, c, u, ctx.opts);
                     for (int k = 0; k < M; ++k) upd(r, rep.Rstar_k(k) - (N - 1));
                     upd(r, std::abs(rep.K) - 1.0);
                     upd(r, std::abs(rep.support) - 1.0);
                     auto [Ra, Rb] = curvature_two_ways(p, u, ctx.opts.conn);
                     for (int i = 1; i <= N; ++i)
                       for (int m = 1; m <= M; ++m)
                         for (int l = 1; l <= M; ++l)
                           upd(r, Ra(i, N, m, l) - c.Qv(m, i, l));
                     SphericalData s = spherical_at(p, u, ctx.opts);
                     double q1p = (s.q1 - Mat::Identity(M, M)).cwiseAbs().maxCoeff();
                     double q1m = (s.q1 + Mat::Identity(M, M)).cwiseAbs().maxCoeff();
                     upd(r, std::min(q1p, q1m));
                   }
                   return r;
                 }});

    v.push_back({"flat_space",
                 "hyperplane: q = 0, R_ijlm = 0, kappa = 0, K = 0, R* = 0, A = R = 0",
                 1e-8, is_flat,
                 [](CheckContext& ctx) {
                   double r = 0.0;
                   for (const Vec& u : ctx.points) {
                     ConnectionData c = ctx.conn(u);
                     upd(r, c.q.max_abs());
                     upd(r, c.Rcurv.max_abs());
                     upd(r, c.kappa.cwiseAbs().maxCoeff());
                     upd(r, c.A.cwiseAbs().maxCoeff());
                     upd(r, c.R.cwiseAbs().maxCoeff());
                     OperatorReport rep = invariants_report(*ctx.patch, c, u, ctx.opts);
                     upd(r, rep.K);
                     upd(r, rep.Rstar);
                   }
                   return r;
                 }});

    return v;
  }();
  return defs;
}

std::vector<CheckRow> run_checks(const SurfacePatch& patch, const std::vector<std::string>& ids,
                                 std::uint64_t seed, int npoints, bool fault_inject,
                                 const std::map<std::string, double>& tol_overrides,
                                 int threads) {
  const auto& defs = identity_checks();

  std::vector<const CheckDef*> selected;
  if (ids.empty()) {
    for (const auto& d : defs)
      if (!d.applies || d.applies(patch)) selected.push_back(&d);
  } else {
    for (const std::string& id : ids) {
      auto it = std::find_if(defs.begin(), defs.end(),
                             [&id](const CheckDef& d) { return d.id == id; });
      if (it == defs.end()) throw ConfigError("unknown check id '" + id + "'");
      selected.push_back(&*it);
    }
  }
  for (const auto& [id, tol] : tol_overrides) {
    bool known = std::any_of(defs.begin(), defs.end(),
                             [&id = id](const CheckDef& d) { return d.id == id; });
    if (!known) throw ConfigError("tolerance override for unknown check id '" + id + "'");
    (void)tol;
  }

  std::vector<CheckRow> rows(selected.size());
  auto work = [&](std::size_t idx) {
    const CheckDef& d = *selected[idx];
    CheckRow row;
    row.id = d.id;
    row.anchor = d.anchor;
    auto it = tol_overrides.find(d.id);
    row.tolerance = it != tol_overrides.end() ? it->second : d.tol;
    // per-check deterministic seed, independent of scheduling
    std::uint64_t cseed = seed;
    for (char ch : d.id) cseed = cseed * 1099511628211ULL + static_cast<unsigned char>(ch);
    CheckContext ctx(patch, cseed, npoints, fault_inject);
    row.max_residual = d.run(ctx);
    row.pass = row.max_residual <= row.tolerance;
    rows[idx] = row;
  };

  int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(selected.size())));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < selected.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t total = selected.size();
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < total;
             i += static_cast<std::size_t>(nthreads))
          work(i);
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace pfaffgeo
