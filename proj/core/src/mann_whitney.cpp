#include "opnet/mann_whitney.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "opnet/error.hpp"

namespace opnet {

namespace {

constexpr std::size_t kExactPairLimit = 400;  // n1*n2 bound for exact method

// Counts of rank arrangements with U(A beats B) == u, for all u in
// [0, n1*n2]. Recurrence on the largest pooled element: an A contributes
// n2 beaten B's, a B contributes nothing.
std::vector<std::uint64_t> exact_u_counts(std::size_t n1, std::size_t n2) {
  std::size_t u_max = n1 * n2;
  // f[j][u] for the current i (number of A elements considered).
  std::vector<std::vector<std::uint64_t>> f(n2 + 1,
                                            std::vector<std::uint64_t>(u_max + 1, 0));
  for (std::size_t j = 0; j <= n2; ++j) f[j][0] = 1;  // i == 0
  for (std::size_t i = 1; i <= n1; ++i) {
    std::vector<std::vector<std::uint64_t>> g(
        n2 + 1, std::vector<std::uint64_t>(u_max + 1, 0));
    for (std::size_t u = 0; u <= u_max; ++u) g[0][u] = (u == 0) ? 1 : 0;
    for (std::size_t j = 1; j <= n2; ++j) {
      for (std::size_t u = 0; u <= i * j; ++u) {
        std::uint64_t c = g[j - 1][u];  // largest element is a B
        if (u >= j) c += f[j][u - j];   // largest element is an A
        g[j][u] = c;
      }
    }
    f = std::move(g);
  }
  return f[n2];
}

double normal_two_sided(double u, double mu, double variance) {
  if (variance <= 0.0) return 1.0;
  double z = std::abs(u - mu) - 0.5;  // continuity correction
  if (z < 0.0) z = 0.0;
  z /= std::sqrt(variance);
  return std::erfc(z / std::sqrt(2.0));
}

}  // namespace

MannWhitneyResult mann_whitney(const std::vector<double>& sample_a,
                               const std::vector<double>& sample_b) {
  const std::size_t n1 = sample_a.size();
  const std::size_t n2 = sample_b.size();
  if (n1 == 0 || n2 == 0) throw Error("Mann-Whitney requires non-empty samples");
  const std::size_t n = n1 + n2;

  // Midranks over the pooled sample.
  struct Tagged {
    double value;
    bool from_a;
  };
  std::vector<Tagged> pooled;
  pooled.reserve(n);
  for (double v : sample_a) pooled.push_back({v, true});
  for (double v : sample_b) pooled.push_back({v, false});
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  bool has_ties = false;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[j + 1].value == pooled[i].value) ++j;
    std::size_t t = j - i + 1;
    double midrank = 0.5 * static_cast<double>(i + 1 + j + 1);
    if (t > 1) {
      has_ties = true;
      double td = static_cast<double>(t);
      tie_term += td * td * td - td;
    }
    for (std::size_t k = i; k <= j; ++k)
      if (pooled[k].from_a) rank_sum_a += midrank;
    i = j + 1;
  }

  const double u =
      rank_sum_a - static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;

  MannWhitneyResult result;
  result.u_statistic = u;

  if (!has_ties && n1 * n2 <= kExactPairLimit) {
    result.method = MwMethod::Exact;
    auto counts = exact_u_counts(n1, n2);
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    auto u_int = static_cast<std::size_t>(std::llround(u));
    std::uint64_t le = 0, ge = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (k <= u_int) le += counts[k];
      if (k >= u_int) ge += counts[k];
    }
    double tail = std::min(le, ge) == le
                      ? static_cast<double>(le) / static_cast<double>(total)
                      : static_cast<double>(ge) / static_cast<double>(total);
    result.p_value = std::min(1.0, 2.0 * tail);
    return result;
  }

  result.method = MwMethod::NormalApprox;
  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  const double mu = dn1 * dn2 / 2.0;
  const double variance =
      dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  result.p_value = normal_two_sided(u, mu, variance);
  return result;
}

}  // namespace opnet
