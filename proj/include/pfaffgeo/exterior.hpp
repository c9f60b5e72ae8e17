// Index-level exterior algebra: generalized Kronecker delta over index
// multisets, the pair antisymmetrizer rot, and wedge-coefficient extraction
// for 1- and 2-forms given by coefficient arrays.
#pragma once

#include "pfaffgeo/core.hpp"

namespace pfaffgeo {

// Ordered list of 1-based indices in 1..N.
using MultiIndex = std::vector<int>;

// One-form a = sum_k a_k w_k, coefficients 1..N.
struct Form1 {
  Vec a;
  explicit Form1(int n) : a(Vec::Zero(n)) {}
  explicit Form1(Vec coeffs) : a(std::move(coeffs)) {}
  int size() const { return static_cast<int>(a.size()); }
  double coeff(int k) const { return a(k - 1); }
  double& coeff(int k) { return a(k - 1); }
};

// Two-form with exactly antisymmetric coefficient table; only l<m entries are
// stored, reads of (m,l) negate.
class Form2 {
 public:
  explicit Form2(int n) : n_(n), c_(Vec::Zero(n * (n - 1) / 2)) {}
  int size() const { return n_; }
  double coeff(int l, int m) const {
    if (l == m) return 0.0;
    return l < m ? c_(pos(l, m)) : -c_(pos(m, l));
  }
  void set(int l, int m, double value) {
    if (l == m) {
      if (value != 0.0) throw ConfigError("two-form diagonal entry must be zero");
      return;
    }
    if (l < m)
      c_(pos(l, m)) = value;
    else
      c_(pos(m, l)) = -value;
  }

 private:
  int pos(int l, int m) const {
    // row l occupies n-l entries starting after rows 1..l-1
    int before = (l - 1) * n_ - (l - 1) * l / 2;
    return before + (m - l - 1);
  }
  int n_;
  Vec c_;
};

// +1 / -1 for even/odd permutations of distinct indices, 0 otherwise
// (repeats, mismatched lengths, or j not a permutation of i).
int kronecker_delta(const MultiIndex& i, const MultiIndex& j);

// Elementwise A..i..j.. - A..j..i.. over the two designated slots (1-based
// slot positions). The slots must have equal extent.
NdTable rot(const NdTable& t, int slot_a, int slot_b);

// Coefficient of a 1-form wedged with a 2-form on the target index triple:
// (1/1!)(1/2!) sum_{i,j,k} delta_{ijk,target} a_i b_jk.
double wedge12(const Form1& a, const Form2& b, const MultiIndex& target);

}  // namespace pfaffgeo
