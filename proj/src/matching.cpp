#include "polysum/matching.hpp"

#include <algorithm>
#include <limits>

namespace polysum {

double max_matching_distance(const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  struct Pair {
    double dist;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs.push_back({std::abs(a[i] - b[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.dist < y.dist; });

  std::vector<bool> used_a(n, false), used_b(n, false);
  std::size_t matched = 0;
  double worst = 0;
  for (const Pair& p : pairs) {
    if (used_a[p.i] || used_b[p.j]) continue;
    used_a[p.i] = true;
    used_b[p.j] = true;
    worst = std::max(worst, p.dist);
    if (++matched == n) break;
  }
  return worst;
}

}  // namespace polysum
