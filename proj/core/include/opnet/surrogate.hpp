#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opnet/entropy.hpp"
#include "opnet/time_series.hpp"

namespace opnet {

// Surrogate generation algorithms, Theiler's naming.
enum class SurrogateAlgorithm {
  Shuffle,          // alg0: random permutation of the samples
  PhaseRandomized,  // alg1: FFT phase randomization (amplitudes kept)
  Aaft,             // alg2: amplitude-adjusted Fourier transform
};

const char* to_string(SurrogateAlgorithm a);                  // "alg0"...
SurrogateAlgorithm surrogate_algorithm_from_string(const std::string& name);

TimeSeries alg0_shuffle(const TimeSeries& series, std::uint64_t seed);
TimeSeries alg1_phase_randomized(const TimeSeries& series, std::uint64_t seed);
TimeSeries alg2_aaft(const TimeSeries& series, std::uint64_t seed);

TimeSeries make_surrogate(const TimeSeries& series, SurrogateAlgorithm algorithm,
                          std::uint64_t seed);

struct SurrogateEnsemble {
  std::string source_id;
  SurrogateAlgorithm algorithm = SurrogateAlgorithm::Shuffle;
  std::uint64_t seed = 0;
  std::vector<TimeSeries> members;
};

// Member j is seeded with derive_seed(seed, "surrogate", j); the ensemble
// is reproducible and independent of evaluation order.
SurrogateEnsemble generate_ensemble(const TimeSeries& series,
                                    SurrogateAlgorithm algorithm, int count,
                                    std::uint64_t seed, int threads = 0);

// Rank-order surrogate test. With N surrogates the two-sided size is
// 2/(N+1) (N = 39 gives 0.05): the null is rejected iff the original
// statistic is strictly below every surrogate value or strictly above all
// of them. Ties with the extreme surrogate count against rejection.
struct SurrogateTestResult {
  double q_original = 0.0;
  std::vector<double> q_surrogates;
  int rank = 0;           // 1-based mid-tie position among the N+1 values
  bool rejected = false;  // strictly extreme; a tied original never rejects
  // Parametric distance |q_original - mean| / sample sd of the surrogate
  // values; +infinity with alpha_defined = false when the sd is zero.
  double alpha = 0.0;
  bool alpha_defined = true;
};

SurrogateTestResult rank_order_test(double q_original,
                                    const std::vector<double>& q_surrogates);

// Generates `count` surrogates, evaluates `statistic` at `params` on the
// original and every member (Forward direction), and applies the
// rank-order test. Fewer than 39 members cannot resolve a two-sided 0.05
// rank test; the CLI warns in that case.
SurrogateTestResult run_surrogate_battery(
    const TimeSeries& series, EmbeddingParams params, Statistic statistic,
    SurrogateAlgorithm algorithm, int count, std::uint64_t seed,
    GneWeighting weighting = GneWeighting::ExcludeSelfLoops, int threads = 0);

}  // namespace opnet
