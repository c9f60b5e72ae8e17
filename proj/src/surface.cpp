#include "pfaffgeo/surface.hpp"

#include <cmath>

namespace pfaffgeo {

namespace {

const double kStep = std::cbrt(std::numeric_limits<double>::epsilon());

double step_for(double ul) { return kStep * std::max(1.0, std::abs(ul)); }

// Installs one generic chart (templated over double / Jet) as both the plain
// and the jet evaluator.
template <class F>
void install_chart(SurfacePatch& p, F chart) {
  p.embed_jet = [chart](const JetVec& u) { return chart(u); };
  p.embed = [chart](const Vec& u) {
    std::vector<double> uu(u.data(), u.data() + u.size());
    std::vector<double> x = chart(uu);
    Vec r(static_cast<int>(x.size()));
    for (int c = 0; c < r.size(); ++c) r(c) = x[static_cast<std::size_t>(c)];
    return r;
  };
}

void require_finite(const Vec& x, const SurfacePatch& p) {
  if (!x.allFinite())
    throw EvaluationError("embedding returned a non-finite value on '" + p.name + "'");
}

// Minimal ordered Gram-Schmidt + complement vector, local to the orientation
// probe; the frames module owns the full construction.
Vec probe_normal(const Mat& d1) {
  const int N = static_cast<int>(d1.rows());
  const int M = static_cast<int>(d1.cols());
  Mat t(M, N);
  for (int l = 0; l < M; ++l) {
    Vec w = d1.col(l);
    for (int k = 0; k < l; ++k) w -= w.dot(t.row(k)) * t.row(k).transpose();
    t.row(l) = w.normalized();
  }
  Vec n(N);
  Mat minor(M, M);
  for (int c = 0; c < N; ++c) {
    int jj = 0;
    for (int j = 0; j < N; ++j) {
      if (j == c) continue;
      minor.col(jj++) = t.col(j);
    }
    double sign = ((N - 1 + c) % 2 == 0) ? 1.0 : -1.0;
    n(c) = sign * minor.determinant();
  }
  return n.normalized();
}

// Unit-sphere chart in polar angles t_1..t_M; t_M is the azimuth. Laid out so
// the equatorial point t = (pi/2, 0, ..) lands on the first ambient axis.
template <class T>
std::vector<T> sphere_chart(const std::vector<T>& t, int N) {
  using std::cos;
  using std::sin;
  const int M = N - 1;
  std::vector<T> x(static_cast<std::size_t>(N), t[0] * 0.0);
  T prod = t[0] * 0.0 + 1.0;
  for (int i = 1; i <= M - 1; ++i) {
    x[static_cast<std::size_t>(N - i)] = prod * cos(t[static_cast<std::size_t>(i - 1)]);
    prod = prod * sin(t[static_cast<std::size_t>(i - 1)]);
  }
  x[0] = prod * cos(t[static_cast<std::size_t>(M - 1)]);
  x[1] = prod * sin(t[static_cast<std::size_t>(M - 1)]);
  return x;
}

// The identities for the shape table of a sphere pin its orientation: the
// det(e)=+1 frame must carry the normal toward the center. A single ambient
// reflection (negating x_2, which fixes the reference point) flips it when
// the raw chart comes out the other way.
void orient_inward(SurfacePatch& p) {
  Jet3 J = jet(p, p.center(), 1);
  Vec n = probe_normal(J.d1);
  if (n.dot(J.x) > 0.0) {
    auto base_jet = p.embed_jet;
    auto base = p.embed;
    p.embed_jet = [base_jet](const JetVec& u) {
      JetVec x = base_jet(u);
      x[1] = -x[1];
      return x;
    };
    p.embed = [base](const Vec& u) {
      Vec x = base(u);
      x(1) = -x(1);
      return x;
    };
  }
}

int int_param(double v, const char* what) {
  int n = static_cast<int>(std::lround(v));
  if (std::abs(v - n) > 1e-12) throw ConfigError(std::string(what) + " must be an integer");
  return n;
}

}  // namespace

Vec SurfacePatch::eval(const Vec& u) const {
  if (embed) {
    Vec x = embed(u);
    require_finite(x, *this);
    return x;
  }
  JetVec uj;
  uj.reserve(static_cast<std::size_t>(M));
  for (int l = 0; l < M; ++l) uj.push_back(Jet::constant(u(l), M));
  JetVec xj = embed_jet(uj);
  Vec x(N);
  for (int c = 0; c < N; ++c) x(c) = xj[static_cast<std::size_t>(c)].v;
  require_finite(x, *this);
  return x;
}

bool SurfacePatch::inside(const Vec& u, double margin) const {
  for (int l = 0; l < M; ++l)
    if (u(l) < box[static_cast<std::size_t>(l)][0] + margin ||
        u(l) > box[static_cast<std::size_t>(l)][1] - margin)
      return false;
  return true;
}

Vec SurfacePatch::center() const {
  Vec c(M);
  for (int l = 0; l < M; ++l)
    c(l) = 0.5 * (box[static_cast<std::size_t>(l)][0] + box[static_cast<std::size_t>(l)][1]);
  return c;
}

Vec SurfacePatch::sample_interior(Rng& rng, double rel_margin) const {
  Vec u(M);
  for (int l = 0; l < M; ++l) {
    double lo = box[static_cast<std::size_t>(l)][0];
    double hi = box[static_cast<std::size_t>(l)][1];
    double pad = rel_margin * (hi - lo);
    u(l) = rng.uniform(lo + pad, hi - pad);
  }
  return u;
}

Jet3 jet(const SurfacePatch& patch, const Vec& u, int order) {
  if (order < 1 || order > 3) throw ConfigError("jet order must be 1, 2 or 3");
  if (!patch.embed_jet) return jet_fd(patch, u, order);
  double max_h = 0.0;
  for (int l = 0; l < patch.M; ++l) max_h = std::max(max_h, step_for(u(l)));
  if (!patch.inside(u, 3.0 * max_h))
    throw DomainError("evaluation point too close to the domain boundary of '" + patch.name + "'");

  const int N = patch.N, M = patch.M;
  auto eval_jets = [&](const Vec& at) {
    JetVec uj;
    uj.reserve(static_cast<std::size_t>(M));
    for (int l = 0; l < M; ++l) uj.push_back(Jet::variable(at(l), l, M));
    return patch.embed_jet(uj);
  };

  JetVec xj = eval_jets(u);
  Jet3 out;
  out.order = order;
  out.x = Vec(N);
  out.d1 = Mat(N, M);
  for (int c = 0; c < N; ++c) {
    const Jet& j = xj[static_cast<std::size_t>(c)];
    out.x(c) = j.v;
    out.d1.row(c) = j.g.transpose();
  }
  require_finite(out.x, patch);
  if (order >= 2) {
    out.d2.resize(static_cast<std::size_t>(N));
    for (int c = 0; c < N; ++c) {
      Mat h = xj[static_cast<std::size_t>(c)].h;
      out.d2[static_cast<std::size_t>(c)] = 0.5 * (h + h.transpose());
    }
  }
  if (order >= 3) {
    out.d3 = NdTable({N, M, M, M});
    NdTable raw({N, M, M, M});
    for (int k = 0; k < M; ++k) {
      double h = step_for(u(k));
      Vec up = u, dn = u;
      up(k) += h;
      dn(k) -= h;
      JetVec xp = eval_jets(up), xm = eval_jets(dn);
      for (int c = 0; c < N; ++c)
        for (int l = 0; l < M; ++l)
          for (int m = 0; m < M; ++m)
            raw(c + 1, l + 1, m + 1, k + 1) =
                (xp[static_cast<std::size_t>(c)].h(l, m) - xm[static_cast<std::size_t>(c)].h(l, m)) /
                (2.0 * h);
    }
    for (int c = 1; c <= N; ++c)
      for (int l = 1; l <= M; ++l)
        for (int m = 1; m <= M; ++m)
          for (int k = 1; k <= M; ++k)
            out.d3(c, l, m, k) =
                (raw(c, l, m, k) + raw(c, m, l, k) + raw(c, k, m, l) + raw(c, l, k, m) +
                 raw(c, k, l, m) + raw(c, m, k, l)) /
                6.0;
  }
  return out;
}

Jet3 jet_fd(const SurfacePatch& patch, const Vec& u, int order) {
  if (order < 1 || order > 3) throw ConfigError("jet order must be 1, 2 or 3");
  double max_h = 0.0;
  for (int l = 0; l < patch.M; ++l) max_h = std::max(max_h, step_for(u(l)));
  if (!patch.inside(u, 3.0 * max_h))
    throw DomainError("evaluation point too close to the domain boundary of '" + patch.name + "'");

  const int N = patch.N, M = patch.M;
  auto f = [&](const Vec& at) { return patch.eval(at); };

  Jet3 out;
  out.order = order;
  out.x = f(u);
  out.d1 = Mat(N, M);
  for (int l = 0; l < M; ++l) {
    double h = step_for(u(l));
    Vec up = u, dn = u;
    up(l) += h;
    dn(l) -= h;
    out.d1.col(l) = (f(up) - f(dn)) / (2.0 * h);
  }
  if (order >= 2) {
    out.d2.assign(static_cast<std::size_t>(N), Mat::Zero(M, M));
    for (int l = 0; l < M; ++l) {
      double hl = step_for(u(l));
      for (int m = l; m < M; ++m) {
        Vec col(N);
        if (m == l) {
          Vec up = u, dn = u;
          up(l) += hl;
          dn(l) -= hl;
          col = (f(up) - 2.0 * out.x + f(dn)) / (hl * hl);
        } else {
          double hm = step_for(u(m));
          Vec pp = u, pm = u, mp = u, mm = u;
          pp(l) += hl; pp(m) += hm;
          pm(l) += hl; pm(m) -= hm;
          mp(l) -= hl; mp(m) += hm;
          mm(l) -= hl; mm(m) -= hm;
          col = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * hl * hm);
        }
        for (int c = 0; c < N; ++c) {
          out.d2[static_cast<std::size_t>(c)](l, m) = col(c);
          out.d2[static_cast<std::size_t>(c)](m, l) = col(c);
        }
      }
    }
  }
  if (order >= 3) {
    out.d3 = NdTable({N, M, M, M});
    for (int k = 0; k < M; ++k) {
      double h = step_for(u(k));
      Vec up = u, dn = u;
      up(k) += h;
      dn(k) -= h;
      Jet3 jp = jet_fd(patch, up, 2), jm = jet_fd(patch, dn, 2);
      for (int c = 0; c < N; ++c)
        for (int l = 0; l < M; ++l)
          for (int m = 0; m < M; ++m) {
            double v = (jp.d2[static_cast<std::size_t>(c)](l, m) -
                        jm.d2[static_cast<std::size_t>(c)](l, m)) /
                       (2.0 * h);
            out.d3(c + 1, l + 1, m + 1, k + 1) += v / 3.0;
            out.d3(c + 1, k + 1, m + 1, l + 1) += v / 3.0;
            out.d3(c + 1, l + 1, k + 1, m + 1) += v / 3.0;
          }
    }
  }
  return out;
}

SurfacePatch catalog(const std::string& name, const std::vector<double>& params) {
  SurfacePatch p;
  p.name = name;
  p.params = params;

  if (name == "hyperplane") {
    if (params.size() != 1) throw ConfigError("hyperplane expects params [N]");
    int N = int_param(params[0], "N");
    if (N < 3) throw ConfigError("ambient dimension must be >= 3");
    p.N = N;
    p.M = N - 1;
    p.box.assign(static_cast<std::size_t>(p.M), {-1.0, 1.0});
    install_chart(p, [N](const auto& u) {
      using T = std::decay_t<decltype(u[0])>;
      std::vector<T> x(static_cast<std::size_t>(N), u[0] * 0.0);
      for (int l = 0; l + 1 < N; ++l) x[static_cast<std::size_t>(l)] = u[static_cast<std::size_t>(l)];
      return x;
    });
    return p;
  }

  if (name == "hypersphere") {
    if (params.size() != 2) throw ConfigError("hypersphere expects params [N, r]");
    int N = int_param(params[0], "N");
    double r = params[1];
    if (N < 3) throw ConfigError("ambient dimension must be >= 3");
    if (r <= 0) throw ConfigError("hypersphere radius must be positive");
    p.N = N;
    p.M = N - 1;
    p.box.assign(static_cast<std::size_t>(p.M), {0.2, M_PI - 0.2});
    p.box.back() = {0.2, 2.0 * M_PI - 0.2};
    install_chart(p, [N, r](const auto& t) {
      auto x = sphere_chart(t, N);
      for (auto& xc : x) xc = xc * r;
      return x;
    });
    orient_inward(p);
    return p;
  }

  if (name == "ellipsoid") {
    if (params.size() < 2) throw ConfigError("ellipsoid expects params [N, a_1..a_N]");
    int N = int_param(params[0], "N");
    if (N < 3) throw ConfigError("ambient dimension must be >= 3");
    if (params.size() != static_cast<std::size_t>(N) + 1)
      throw ConfigError("ellipsoid expects params [N, a_1..a_N]");
    std::vector<double> axes(params.begin() + 1, params.end());
    for (double a : axes)
      if (a <= 0) throw ConfigError("ellipsoid axes must be positive");
    p.N = N;
    p.M = N - 1;
    p.box.assign(static_cast<std::size_t>(p.M), {0.2, M_PI - 0.2});
    p.box.back() = {0.2, 2.0 * M_PI - 0.2};
    install_chart(p, [N, axes](const auto& t) {
      auto x = sphere_chart(t, N);
      for (int c = 0; c < N; ++c)
        x[static_cast<std::size_t>(c)] = x[static_cast<std::size_t>(c)] * axes[static_cast<std::size_t>(c)];
      return x;
    });
    orient_inward(p);
    return p;
  }

  if (name == "torus3") {
    if (params.size() != 2) throw ConfigError("torus3 expects params [R, r]");
    double R = params[0], r = params[1];
    if (!(R > r && r > 0)) throw ConfigError("torus3 needs R > r > 0");
    p.N = 3;
    p.M = 2;
    p.box = {{0.05, 2.0 * M_PI - 0.05}, {-M_PI + 0.05, M_PI - 0.05}};
    install_chart(p, [R, r](const auto& u) {
      using std::cos;
      using std::sin;
      using T = std::decay_t<decltype(u[0])>;
      std::vector<T> x;
      x.reserve(3);
      auto ring = R + r * cos(u[1]);
      x.push_back(ring * cos(u[0]));
      x.push_back(ring * sin(u[0]));
      x.push_back(r * sin(u[1]));
      return x;
    });
    return p;
  }

  if (name == "graph") {
    if (params.size() != 3) throw ConfigError("graph expects params [N, a, b]");
    int N = int_param(params[0], "N");
    if (N < 3) throw ConfigError("ambient dimension must be >= 3");
    double a = params[1], b = params[2];
    p.N = N;
    p.M = N - 1;
    p.box.assign(static_cast<std::size_t>(p.M), {-0.8, 0.8});
    install_chart(p, [N, a, b](const auto& u) {
      using std::exp;
      using std::sin;
      using T = std::decay_t<decltype(u[0])>;
      std::vector<T> x(static_cast<std::size_t>(N), u[0] * 0.0);
      T s = u[0] * 0.0, s2 = u[0] * 0.0;
      for (int l = 0; l + 1 < N; ++l) {
        x[static_cast<std::size_t>(l)] = u[static_cast<std::size_t>(l)];
        s = s + u[static_cast<std::size_t>(l)];
        s2 = s2 + u[static_cast<std::size_t>(l)] * u[static_cast<std::size_t>(l)];
      }
      x[static_cast<std::size_t>(N - 1)] = a * sin(s) + b * exp(-s2);
      return x;
    });
    return p;
  }

  throw ConfigError("unknown catalog surface '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> catalog_arities() {
  return {
      {"hyperplane", "[N]"},
      {"hypersphere", "[N, r]"},
      {"ellipsoid", "[N, a_1..a_N]"},
      {"torus3", "[R, r]"},
      {"graph", "[N, a, b]"},
  };
}

SurfacePatch transformed(const SurfacePatch& patch, const Mat& Q, const Vec& shift) {
  SurfacePatch p = patch;
  p.name = patch.name + "+motion";
  const int N = patch.N;
  auto base_jet = patch.embed_jet;
  auto base = patch.embed;
  p.embed_jet = [base_jet, Q, shift, N](const JetVec& u) {
    JetVec x = base_jet(u);
    JetVec y(static_cast<std::size_t>(N));
    for (int c = 0; c < N; ++c) {
      Jet acc = Jet::constant(shift(c), x[0].nvars());
      for (int d = 0; d < N; ++d) acc = acc + Q(c, d) * x[static_cast<std::size_t>(d)];
      y[static_cast<std::size_t>(c)] = acc;
    }
    return y;
  };
  p.embed = [base, Q, shift](const Vec& u) { return (Q * base(u) + shift).eval(); };
  return p;
}

namespace {

// u_l = p_l + q_l v_l + r_l sin(phase_l + sum_{k<l} c_lk v_k): triangular
// positive-diagonal Jacobian, image strictly inside the base box.
ReparametrizedPatch make_reparam(const SurfacePatch& patch, Rng& rng, bool triangular) {
  const int M = patch.M;
  Vec p(M), q(M), r(M), phase(M);
  Mat c = Mat::Zero(M, M);
  for (int l = 0; l < M; ++l) {
    double lo = patch.box[static_cast<std::size_t>(l)][0];
    double hi = patch.box[static_cast<std::size_t>(l)][1];
    double span = hi - lo;
    q(l) = 0.5 * span;
    r(l) = 0.06 * span;
    p(l) = lo + 0.2 * span;
    phase(l) = rng.uniform(0.0, 2.0 * M_PI);
    // frame order survives iff u_l depends only on v_l..v_M with a positive
    // diagonal rate
    for (int k = 0; k < M; ++k) {
      bool allowed = triangular ? (k > l) : (k != l);
      if (allowed) c(l, k) = rng.uniform(-1.0, 1.0);
    }
  }

  ReparametrizedPatch out;
  out.patch = patch;
  out.patch.name = patch.name + "+reparam";
  out.patch.box.assign(static_cast<std::size_t>(M), {0.0, 1.0});
  auto base_jet = patch.embed_jet;
  auto base = patch.embed;

  auto map_plain = [p, q, r, phase, c, M](const Vec& v) {
    Vec u(M);
    for (int l = 0; l < M; ++l) {
      double arg = phase(l);
      for (int k = 0; k < M; ++k) arg += c(l, k) * v(k);
      u(l) = p(l) + q(l) * v(l) + r(l) * std::sin(arg);
    }
    return u;
  };
  out.to_base = map_plain;
  out.patch.embed = [base, map_plain](const Vec& v) { return base(map_plain(v)); };
  out.patch.embed_jet = [base_jet, p, q, r, phase, c, M](const JetVec& v) {
    JetVec u(static_cast<std::size_t>(M));
    for (int l = 0; l < M; ++l) {
      Jet arg = Jet::constant(phase(l), v[0].nvars());
      for (int k = 0; k < M; ++k) arg = arg + c(l, k) * v[static_cast<std::size_t>(k)];
      u[static_cast<std::size_t>(l)] = p(l) + q(l) * v[static_cast<std::size_t>(l)] + r(l) * sin(arg);
    }
    return base_jet(u);
  };
  return out;
}

}  // namespace

ReparametrizedPatch reparametrized_triangular(const SurfacePatch& patch, Rng& rng) {
  return make_reparam(patch, rng, true);
}

ReparametrizedPatch reparametrized_general(const SurfacePatch& patch, Rng& rng) {
  return make_reparam(patch, rng, false);
}

}  // namespace pfaffgeo
