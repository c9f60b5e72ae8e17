// Shared basics: linear-algebra typedefs, error types, a small dense
// index table with 1-based accessors, and a portable deterministic RNG.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfaffgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParabolicPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense rank-k table of doubles. Public indices are 1-based throughout the
// library; storage is 0-based row-major.
class NdTable {
 public:
  NdTable() = default;
  explicit NdTable(std::vector<int> dims) : dims_(std::move(dims)) {
    std::size_t n = 1;
    for (int d : dims_) n *= static_cast<std::size_t>(d);
    v_.assign(n, 0.0);
  }

  int rank() const { return static_cast<int>(dims_.size()); }
  int dim(int slot) const { return dims_[static_cast<std::size_t>(slot - 1)]; }
  const std::vector<int>& dims() const { return dims_; }

  template <typename... I>
  double& operator()(I... idx) {
    return v_[flat({static_cast<int>(idx)...})];
  }
  template <typename... I>
  double operator()(I... idx) const {
    return v_[flat({static_cast<int>(idx)...})];
  }
  double& at(const std::vector<int>& idx) { return v_[flat_v(idx)]; }
  double at(const std::vector<int>& idx) const { return v_[flat_v(idx)]; }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  NdTable& operator*=(double c) {
    for (double& x : v_) x *= c;
    return *this;
  }
  NdTable operator-(const NdTable& o) const {
    NdTable r = *this;
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] -= o.v_[i];
    return r;
  }

  const std::vector<double>& raw() const { return v_; }
  std::vector<double>& raw() { return v_; }

 private:
  std::size_t flat(std::initializer_list<int> idx) const {
    std::size_t p = 0, k = 0;
    for (int i : idx) {
      p = p * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(i - 1);
      ++k;
    }
    return p;
  }
  std::size_t flat_v(const std::vector<int>& idx) const {
    std::size_t p = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      p = p * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(idx[k] - 1);
    return p;
  }

  std::vector<int> dims_;
  std::vector<double> v_;
};

// Sign matrix of Definition-style index ordering: -1 below k<s, +1 above, 0 on
// the diagonal.
inline double eps_sign(int k, int s) { return k < s ? -1.0 : (k > s ? 1.0 : 0.0); }

inline Mat eps_matrix(int n) {
  Mat e(n, n);
  for (int k = 1; k <= n; ++k)
    for (int s = 1; s <= n; ++s) e(k - 1, s - 1) = eps_sign(k, s);
  return e;
}

// splitmix64 generator with Box-Muller normals. Fully deterministic across
// platforms; std:: distributions are not.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int a, int b) {  // inclusive
    return a + static_cast<int>(next() % static_cast<std::uint64_t>(b - a + 1));
  }
  double normal() {
    double u1 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  Vec normal_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }
  Mat normal_mat(int r, int c) {
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = normal();
    return m;
  }
  // Haar-ish random rotation with det +1.
  Mat rotation(int n) {
    Mat a = normal_mat(n, n);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
      if (r(i, i) < 0) q.col(i) *= -1.0;
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
  }
};

}  // namespace pfaffgeo
