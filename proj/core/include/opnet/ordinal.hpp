#pragma once

#include <cstdint>
#include <vector>

#include "opnet/time_series.hpp"

namespace opnet {

// Rank vector of one embedding window: ranks[k] is the rank (1 = smallest)
// of the k-th window element. Ties are broken by order of appearance, so
// the earlier element gets the smaller rank.
struct OrdinalPattern {
  std::vector<std::uint8_t> ranks;

  bool operator==(const OrdinalPattern&) const = default;
};

// Bijection between rank vectors of length m and [0, m!) via the Lehmer
// code. m <= 20 so codes fit in 64 bits.
std::uint64_t encode_pattern(const OrdinalPattern& pattern);
OrdinalPattern decode_pattern(std::uint64_t code, int m);

// Ordinal symbol sequence of a series under one embedding and direction.
struct PatternSequence {
  std::vector<std::uint64_t> codes;  // one per embedding vector, stride 1
  EmbeddingParams params;
  Direction direction = Direction::Forward;

  std::size_t size() const { return codes.size(); }
};

// Maps each embedding vector (x_i, x_{i+tau}, ..., x_{i+(m-1)tau}) to its
// pattern code. Direction::Reverse reads the series back to front first.
// Throws unless at least two vectors fit.
PatternSequence extract_patterns(const TimeSeries& series, EmbeddingParams params,
                                 Direction direction = Direction::Forward);

// Pattern of a single window, exposed for tests and tools.
OrdinalPattern window_pattern(const double* window, int m, int tau);

}  // namespace opnet
