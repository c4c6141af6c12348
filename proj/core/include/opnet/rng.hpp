#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace opnet {

// Deterministic RNG used for every random choice in the library. All
// distributions are implemented on top of the raw 64-bit stream so results
// are identical across standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [0, n) via rejection sampling; n must be > 0.
  std::uint64_t below(std::uint64_t n);

  // Standard normal via Box-Muller; the spare deviate is cached.
  double gaussian();

private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent stream seed from a master seed, a purpose tag and
// an index (splitmix64 over the tag bytes and index). Used so that e.g.
// surrogate j of series s is reproducible regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t index = 0);

}  // namespace opnet
