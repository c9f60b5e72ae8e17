// Forward-mode scalar jet carrying value, gradient and Hessian with respect
// to a fixed set of seed variables. Arithmetic is closed over the operations
// the surface catalog uses (+,-,*,/,sin,cos,exp,sqrt,pow,log).
#pragma once

#include "pfaffgeo/core.hpp"

namespace pfaffgeo {

class Jet {
 public:
  double v = 0.0;
  Vec g;
  Mat h;

  Jet() = default;
  Jet(double value, int nvars)
      : v(value), g(Vec::Zero(nvars)), h(Mat::Zero(nvars, nvars)) {}

  static Jet constant(double value, int nvars) { return Jet(value, nvars); }
  static Jet variable(double value, int idx, int nvars) {
    Jet j(value, nvars);
    j.g(idx) = 1.0;
    return j;
  }
  int nvars() const { return static_cast<int>(g.size()); }

  Jet operator-() const {
    Jet r = *this;
    r.v = -r.v;
    r.g = -r.g;
    r.h = -r.h;
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    r.v += b.v;
    r.g += b.g;
    r.h += b.h;
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.v * b.v, a.nvars());
    r.g = a.g * b.v + b.g * a.v;
    r.h = a.h * b.v + b.h * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

  friend Jet operator+(const Jet& a, double c) {
    Jet r = a;
    r.v += c;
    return r;
  }
  friend Jet operator+(double c, const Jet& a) { return a + c; }
  friend Jet operator-(const Jet& a, double c) { return a + (-c); }
  friend Jet operator-(double c, const Jet& a) { return (-a) + c; }
  friend Jet operator*(const Jet& a, double c) {
    Jet r = a;
    r.v *= c;
    r.g *= c;
    r.h *= c;
    return r;
  }
  friend Jet operator*(double c, const Jet& a) { return a * c; }
  friend Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
  friend Jet operator/(double c, const Jet& a) { return recip(a) * c; }

  // f(u): value f, first derivative fp, second fpp at u = a.v.
  static Jet chain(const Jet& a, double f, double fp, double fpp) {
    Jet r(f, a.nvars());
    r.g = fp * a.g;
    r.h = fp * a.h + fpp * (a.g * a.g.transpose());
    return r;
  }
  static Jet recip(const Jet& a) {
    double iv = 1.0 / a.v;
    return chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
  }

  friend Jet sin(const Jet& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
  friend Jet cos(const Jet& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
  friend Jet exp(const Jet& a) {
    double e = std::exp(a.v);
    return chain(a, e, e, e);
  }
  friend Jet log(const Jet& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
  friend Jet sqrt(const Jet& a) {
    double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
  }
  friend Jet pow(const Jet& a, double p) {
    double f = std::pow(a.v, p);
    return chain(a, f, p * std::pow(a.v, p - 1.0), p * (p - 1.0) * std::pow(a.v, p - 2.0));
  }
};

using JetVec = std::vector<Jet>;

}  // namespace pfaffgeo
