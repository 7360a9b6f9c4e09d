#include "qtope/counting.hpp"

#include <vector>

namespace qtope {

std::uint64_t catalan(int k) {
  // C_k = binom(2k,k)/(k+1), built by the standard recurrence.
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i)
    c = c * 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (i + 2);
  return c;
}

std::uint64_t partition_count(int n) {
  if (n < 0) return 0;
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int m = part; m <= n; ++m) p[m] += p[m - part];
  return p[n];
}

std::uint64_t twos_in_all_partitions(int n) {
  // Partitions with at least j parts equal to 2 biject with partitions of
  // n - 2j, so t_n = sum_j p(n - 2j).
  std::uint64_t t = 0;
  for (int j = 1; 2 * j <= n; ++j) t += partition_count(n - 2 * j);
  return t;
}

std::uint64_t weighted_composition_sum(int n, std::uint64_t weight) {
  if (n < 0) return 0;
  std::vector<std::uint64_t> f(n + 1, 0);
  f[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int part = 1; part <= m; ++part)
      f[m] += (part == 2 ? weight : 1) * f[m - part];
  return f[n];
}

std::uint64_t a052528(int k) {
  std::vector<std::uint64_t> b(std::max(k + 1, 2), 0);
  b[0] = b[1] = 1;
  for (int m = 2; m <= k; ++m) {
    b[m] = 2 * b[m - 2];
    for (int i = 0; i < m; ++i) b[m] += b[i];
  }
  return b[k];
}

}  // namespace qtope
