#include <doctest.h>
#include <algorithm>
#include "pfaffgeo/exterior.hpp"

using namespace pfaffgeo;

namespace {
// independent permutation sign: count inversions after mapping j onto position
int oracle_sign(const MultiIndex& i, const MultiIndex& j) {
  if (i.size() != j.size()) return 0;
  std::vector<int> perm;
  for (int jv : j) {
    auto it = std::find(i.begin(), i.end(), jv);
    if (it == i.end()) return 0;
    perm.push_back(static_cast<int>(it - i.begin()));
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
  int inv = 0;
  for (size_t a = 0; a < perm.size(); ++a)
    for (size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}
}  // namespace

TEST_CASE("kronecker delta on pinned examples") {
  CHECK(kronecker_delta({1, 2, 3}, {1, 2, 3}) == 1);
  CHECK(kronecker_delta({1, 3, 2}, {1, 2, 3}) == -1);
  CHECK(kronecker_delta({1, 1, 2}, {1, 2, 3}) == 0);
  CHECK(kronecker_delta({1, 2}, {1, 2, 3}) == 0);
  CHECK(kronecker_delta({2, 3, 1}, {1, 2, 3}) == 1);
  CHECK(kronecker_delta({4, 5}, {5, 4}) == -1);
}

TEST_CASE("kronecker delta agrees with the enumeration oracle up to length 4") {
  for (int len = 1; len <= 4; ++len) {
    MultiIndex base(len);
    for (int k = 0; k < len; ++k) base[k] = k + 1;
    MultiIndex perm = base;
    do {
      CHECK(kronecker_delta(perm, base) == oracle_sign(perm, base));
      CHECK(kronecker_delta(base, perm) == oracle_sign(base, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // non-permutations
  CHECK(kronecker_delta({1, 2, 4}, {1, 2, 3}) == oracle_sign({1, 2, 4}, {1, 2, 3}));
}

TEST_CASE("rot antisymmetrizes the designated slots") {
  Rng rng(7);
  NdTable t({3, 4, 3});
  for (double& x : t.raw()) x = rng.uniform(-1, 1);
  NdTable r = rot(t, 1, 3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 3; ++k) {
        CHECK(r(i, j, k) == t(i, j, k) - t(k, j, i));
        CHECK(r(i, j, k) == -r(k, j, i));
      }
  // symmetric input dies
  NdTable s({3, 3});
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) s(i, j) = i * j;
  CHECK(rot(s, 1, 2).max_abs() == 0.0);
  // applying twice doubles
  NdTable twice = rot(r, 1, 3);
  for (size_t i = 0; i < r.raw().size(); ++i)
    CHECK(twice.raw()[i] == 2.0 * r.raw()[i]);
  CHECK_THROWS_AS(rot(t, 0, 2), ConfigError);
  CHECK_THROWS_AS(rot(t, 1, 2), ConfigError);  // unequal extents
}

TEST_CASE("wedge of a one-form with a two-form") {
  Form1 a(3);
  a.coeff(1) = 1.0;
  Form2 b(3);
  b.set(2, 3, 1.0);
  CHECK(wedge12(a, b, {1, 2, 3}) == doctest::Approx(1.0));
  Form2 zero(3);
  CHECK(wedge12(a, zero, {1, 2, 3}) == 0.0);
  CHECK_THROWS_AS(wedge12(a, b, {1, 1, 3}), ConfigError);
}

TEST_CASE("wedge matches the brute-force triple sum and is bilinear") {
  Rng rng(11);
  const int n = 4;
  for (int rep = 0; rep < 10; ++rep) {
    Form1 a(n);
    Form2 b(n);
    for (int i = 1; i <= n; ++i) a.coeff(i) = rng.uniform(-2, 2);
    for (int l = 1; l <= n; ++l)
      for (int m = l + 1; m <= n; ++m) b.set(l, m, rng.uniform(-2, 2));
    MultiIndex target = {1, 3, 4};
    // brute force over all index triples with an independent sign
    double brute = 0.0;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          brute += oracle_sign({i, j, k}, target) * a.coeff(i) * b.coeff(j, k);
    brute *= 0.5;
    CHECK(wedge12(a, b, target) == doctest::Approx(brute).epsilon(1e-12));

    // bilinearity
    Form1 a2(n);
    for (int i = 1; i <= n; ++i) a2.coeff(i) = rng.uniform(-2, 2);
    double c1 = rng.uniform(-2, 2), c2 = rng.uniform(-2, 2);
    Form1 mix(n);
    mix.a = c1 * a.a + c2 * a2.a;
    CHECK(wedge12(mix, b, target) ==
          doctest::Approx(c1 * wedge12(a, b, target) + c2 * wedge12(a2, b, target))
              .epsilon(1e-12));
  }
}

TEST_CASE("two-form storage enforces antisymmetry") {
  Form2 b(4);
  b.set(2, 4, 1.5);
  CHECK(b.coeff(2, 4) == 1.5);
  CHECK(b.coeff(4, 2) == -1.5);
  CHECK(b.coeff(3, 3) == 0.0);
  b.set(4, 2, 2.0);  // writes through the negation
  CHECK(b.coeff(2, 4) == -2.0);
}

TEST_CASE("wedge is linear in the two-form argument") {
  Rng rng(12);
  const int n = 4;
  Form1 a(n);
  for (int i = 1; i <= n; ++i) a.coeff(i) = rng.uniform(-2, 2);
  Form2 b1(n), b2(n), mix(n);
  double c1 = rng.uniform(-2, 2), c2 = rng.uniform(-2, 2);
  for (int l = 1; l <= n; ++l)
    for (int m = l + 1; m <= n; ++m) {
      double v1 = rng.uniform(-2, 2), v2 = rng.uniform(-2, 2);
      b1.set(l, m, v1);
      b2.set(l, m, v2);
      mix.set(l, m, c1 * v1 + c2 * v2);
    }
  MultiIndex target = {2, 4, 1};
  CHECK(wedge12(a, mix, target) ==
        doctest::Approx(c1 * wedge12(a, b1, target) + c2 * wedge12(a, b2, target))
            .epsilon(1e-12));
}
