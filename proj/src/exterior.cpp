#include "pfaffgeo/exterior.hpp"

#include <algorithm>

namespace pfaffgeo {

int kronecker_delta(const MultiIndex& i, const MultiIndex& j) {
  if (i.size() != j.size()) return 0;
  const int m = static_cast<int>(i.size());
  // repeated entries on either side kill the symbol
  auto has_repeat = [](const MultiIndex& v) {
    MultiIndex s = v;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) != s.end();
  };
  if (has_repeat(i) || has_repeat(j)) return 0;

  // map i onto j by counted transpositions; O(m^2) is fine at this scale
  std::vector<int> work = i;
  int sign = 1;
  for (int p = 0; p < m; ++p) {
    int want = j[static_cast<std::size_t>(p)];
    auto it = std::find(work.begin() + p, work.end(), want);
    if (it == work.end()) return 0;  // not a permutation
    int q = static_cast<int>(it - work.begin());
    if (q != p) {
      std::swap(work[static_cast<std::size_t>(p)], work[static_cast<std::size_t>(q)]);
      sign = -sign;
    }
  }
  return sign;
}

NdTable rot(const NdTable& t, int slot_a, int slot_b) {
  const int r = t.rank();
  if (slot_a < 1 || slot_a > r || slot_b < 1 || slot_b > r || slot_a == slot_b)
    throw ConfigError("rot: slot positions out of range");
  if (t.dim(slot_a) != t.dim(slot_b))
    throw ConfigError("rot: designated slots have unequal extents");

  NdTable out(t.dims());
  std::vector<int> idx(static_cast<std::size_t>(r), 1);
  const auto& dims = t.dims();
  while (true) {
    std::vector<int> swapped = idx;
    std::swap(swapped[static_cast<std::size_t>(slot_a - 1)],
              swapped[static_cast<std::size_t>(slot_b - 1)]);
    out.at(idx) = t.at(idx) - t.at(swapped);
    int k = r - 1;
    for (; k >= 0; --k) {
      if (idx[static_cast<std::size_t>(k)] < dims[static_cast<std::size_t>(k)]) {
        ++idx[static_cast<std::size_t>(k)];
        break;
      }
      idx[static_cast<std::size_t>(k)] = 1;
    }
    if (k < 0) break;
  }
  return out;
}

double wedge12(const Form1& a, const Form2& b, const MultiIndex& target) {
  if (target.size() != 3) throw ConfigError("wedge12: target must have three indices");
  if (target[0] == target[1] || target[0] == target[2] || target[1] == target[2])
    throw ConfigError("wedge12: repeated target indices");
  const int n = a.size();
  double sum = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        int d = kronecker_delta({i, j, k}, target);
        if (d != 0) sum += d * a.coeff(i) * b.coeff(j, k);
      }
  return 0.5 * sum;
}

}  // namespace pfaffgeo
