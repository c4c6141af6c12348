#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

// Brute-force Mann-Whitney reference: enumerate every way of assigning n1 of
// the pooled values to group A, compute U for each, and report the doubled
// smaller tail of the permutation distribution. Only usable for tiny samples.
namespace naive {

inline double mw_u_of(const std::vector<double>& a,
                      const std::vector<double>& b) {
  double u = 0.0;
  for (double va : a) {
    for (double vb : b) {
      if (va > vb) u += 1.0;
      else if (va == vb) u += 0.5;
    }
  }
  return u;
}

inline double mw_exact_p(const std::vector<double>& a,
                         const std::vector<double>& b) {
  const double u_obs = mw_u_of(a, b);
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  const std::size_t n1 = a.size();

  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n1), true);
  std::sort(pick.begin(), pick.end());  // lowest permutation of the mask

  std::size_t total = 0, le = 0, ge = 0;
  const double eps = 1e-9;
  do {
    std::vector<double> ga, gb;
    for (std::size_t i = 0; i < n; ++i) {
      (pick[i] ? ga : gb).push_back(pooled[i]);
    }
    double u = mw_u_of(ga, gb);
    ++total;
    if (u <= u_obs + eps) ++le;
    if (u >= u_obs - eps) ++ge;
  } while (std::next_permutation(pick.begin(), pick.end()));

  double tail = static_cast<double>(std::min(le, ge)) / static_cast<double>(total);
  return std::min(1.0, 2.0 * tail);
}

}  // namespace naive
