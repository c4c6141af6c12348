#include "opnet/ordinal.hpp"

#include <algorithm>
#include <array>

#include "opnet/error.hpp"

namespace opnet {

namespace {

constexpr int kMaxM = 20;  // 20! < 2^64

constexpr std::array<std::uint64_t, kMaxM + 1> factorials() {
  std::array<std::uint64_t, kMaxM + 1> f{};
  f[0] = 1;
  for (int i = 1; i <= kMaxM; ++i) f[i] = f[i - 1] * static_cast<std::uint64_t>(i);
  return f;
}

constexpr auto kFactorial = factorials();

// Ranks of one window: order indices by (value, position) so earlier
// elements win ties, then invert the order.
void fill_ranks(const double* window, int m, int tau, std::uint8_t* ranks,
                int* order) {
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order, order + m, [&](int a, int b) {
    double va = window[static_cast<std::size_t>(a) * tau];
    double vb = window[static_cast<std::size_t>(b) * tau];
    if (va != vb) return va < vb;
    return a < b;
  });
  for (int r = 0; r < m; ++r)
    ranks[order[r]] = static_cast<std::uint8_t>(r + 1);
}

std::uint64_t encode_ranks(const std::uint8_t* ranks, int m) {
  // Lehmer code: digit k counts later elements with a smaller rank.
  std::uint64_t code = 0;
  for (int k = 0; k < m; ++k) {
    std::uint64_t smaller_later = 0;
    for (int j = k + 1; j < m; ++j)
      if (ranks[j] < ranks[k]) ++smaller_later;
    code += smaller_later * kFactorial[m - 1 - k];
  }
  return code;
}

}  // namespace

std::uint64_t encode_pattern(const OrdinalPattern& pattern) {
  int m = static_cast<int>(pattern.ranks.size());
  if (m < 1 || m > kMaxM)
    throw Error("pattern length " + std::to_string(m) + " outside [1, 20]");
  std::array<bool, kMaxM + 1> seen{};
  for (std::uint8_t r : pattern.ranks) {
    if (r < 1 || r > m || seen[r])
      throw Error("invalid rank vector: ranks must be a permutation of 1.." +
                  std::to_string(m));
    seen[r] = true;
  }
  return encode_ranks(pattern.ranks.data(), m);
}

OrdinalPattern decode_pattern(std::uint64_t code, int m) {
  if (m < 1 || m > kMaxM)
    throw Error("pattern length " + std::to_string(m) + " outside [1, 20]");
  if (code >= kFactorial[m])
    throw Error("pattern code " + std::to_string(code) + " out of range for m=" +
                std::to_string(m));
  // Unwind the Lehmer digits against the pool of unused ranks.
  std::vector<std::uint8_t> pool(m);
  for (int i = 0; i < m; ++i) pool[i] = static_cast<std::uint8_t>(i + 1);
  OrdinalPattern p;
  p.ranks.resize(m);
  for (int k = 0; k < m; ++k) {
    std::uint64_t digit = code / kFactorial[m - 1 - k];
    code %= kFactorial[m - 1 - k];
    p.ranks[k] = pool[digit];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return p;
}

OrdinalPattern window_pattern(const double* window, int m, int tau) {
  if (m < 1 || m > kMaxM)
    throw Error("pattern length " + std::to_string(m) + " outside [1, 20]");
  OrdinalPattern p;
  p.ranks.resize(m);
  std::array<int, kMaxM> order;
  fill_ranks(window, m, tau, p.ranks.data(), order.data());
  return p;
}

PatternSequence extract_patterns(const TimeSeries& series, EmbeddingParams params,
                                 Direction direction) {
  validate(series);
  std::size_t count = embedding_count(params, series.values.size());

  const std::vector<double>* data = &series.values;
  std::vector<double> reversed;
  if (direction == Direction::Reverse) {
    reversed.assign(series.values.rbegin(), series.values.rend());
    data = &reversed;
  }

  PatternSequence seq;
  seq.params = params;
  seq.direction = direction;
  seq.codes.resize(count);

  std::array<std::uint8_t, kMaxM> ranks;
  std::array<int, kMaxM> order;
  const double* x = data->data();
  for (std::size_t i = 0; i < count; ++i) {
    fill_ranks(x + i, params.m, params.tau, ranks.data(), order.data());
    seq.codes[i] = encode_ranks(ranks.data(), params.m);
  }
  return seq;
}

}  // namespace opnet
