#include "opnet/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "opnet/error.hpp"
#include "opnet/fft.hpp"
#include "opnet/parallel.hpp"
#include "opnet/rng.hpp"

namespace opnet {

namespace {

// Randomizes the phases of a real signal's spectrum in place, preserving
// magnitudes and conjugate symmetry. DC stays put; for even N the Nyquist
// bin keeps a real value of the original magnitude.
std::vector<double> phase_randomize(const std::vector<double>& values, Rng& rng) {
  const std::size_t n = values.size();
  auto spectrum = fft_real(values);
  const std::size_t half = (n - 1) / 2;
  for (std::size_t k = 1; k <= half; ++k) {
    double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double mag = std::abs(spectrum[k]);
    spectrum[k] = std::polar(mag, phi);
    spectrum[n - k] = std::conj(spectrum[k]);
  }
  if (n % 2 == 0 && n >= 2) {
    // Nyquist bin must stay real; its sign is not randomized.
    spectrum[n / 2] = std::complex<double>(std::abs(spectrum[n / 2]) *
                                               (spectrum[n / 2].real() < 0 ? -1.0 : 1.0),
                                           0.0);
  }
  return inverse_fft_real(spectrum);
}

// Stable ranks: positions of the sorted order, ties resolved by index.
std::vector<std::size_t> sort_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

TimeSeries derived_series(const TimeSeries& source, const char* suffix,
                          std::vector<double> values) {
  TimeSeries out;
  out.id = source.id + suffix;
  out.group = source.group;
  out.values = std::move(values);
  validate(out);
  return out;
}

}  // namespace

const char* to_string(SurrogateAlgorithm a) {
  switch (a) {
    case SurrogateAlgorithm::Shuffle: return "alg0";
    case SurrogateAlgorithm::PhaseRandomized: return "alg1";
    case SurrogateAlgorithm::Aaft: return "alg2";
  }
  throw Error("unhandled surrogate algorithm");
}

SurrogateAlgorithm surrogate_algorithm_from_string(const std::string& name) {
  if (name == "alg0" || name == "shuffle") return SurrogateAlgorithm::Shuffle;
  if (name == "alg1" || name == "phase") return SurrogateAlgorithm::PhaseRandomized;
  if (name == "alg2" || name == "aaft") return SurrogateAlgorithm::Aaft;
  throw Error("unknown surrogate algorithm '" + name + "' (expected alg0|alg1|alg2)");
}

TimeSeries alg0_shuffle(const TimeSeries& series, std::uint64_t seed) {
  validate(series);
  Rng rng(seed);
  std::vector<double> values = series.values;
  // Fisher-Yates, driven by the portable RNG for reproducibility.
  for (std::size_t i = values.size() - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(values[i], values[j]);
  }
  return derived_series(series, "#alg0", std::move(values));
}

TimeSeries alg1_phase_randomized(const TimeSeries& series, std::uint64_t seed) {
  validate(series);
  Rng rng(seed);
  return derived_series(series, "#alg1", phase_randomize(series.values, rng));
}

TimeSeries alg2_aaft(const TimeSeries& series, std::uint64_t seed) {
  validate(series);
  Rng rng(seed);
  const std::size_t n = series.values.size();

  // Gaussianize: sorted Gaussian deviates assigned by the rank of each
  // sample (stable, so ties keep input order).
  std::vector<double> gauss(n);
  for (std::size_t i = 0; i < n; ++i) gauss[i] = rng.gaussian();
  std::sort(gauss.begin(), gauss.end());

  auto order = sort_order(series.values);
  std::vector<double> gaussianized(n);
  for (std::size_t rank = 0; rank < n; ++rank) gaussianized[order[rank]] = gauss[rank];

  // Phase-randomize the Gaussianized signal, then restore the original
  // amplitude distribution by rank matching.
  std::vector<double> shuffled = phase_randomize(gaussianized, rng);

  std::vector<double> sorted_values = series.values;
  std::sort(sorted_values.begin(), sorted_values.end());
  auto shuffled_order = sort_order(shuffled);
  std::vector<double> values(n);
  for (std::size_t rank = 0; rank < n; ++rank)
    values[shuffled_order[rank]] = sorted_values[rank];
  return derived_series(series, "#alg2", std::move(values));
}

TimeSeries make_surrogate(const TimeSeries& series, SurrogateAlgorithm algorithm,
                          std::uint64_t seed) {
  switch (algorithm) {
    case SurrogateAlgorithm::Shuffle: return alg0_shuffle(series, seed);
    case SurrogateAlgorithm::PhaseRandomized: return alg1_phase_randomized(series, seed);
    case SurrogateAlgorithm::Aaft: return alg2_aaft(series, seed);
  }
  throw Error("unhandled surrogate algorithm");
}

SurrogateEnsemble generate_ensemble(const TimeSeries& series,
                                    SurrogateAlgorithm algorithm, int count,
                                    std::uint64_t seed, int threads) {
  if (count < 1) throw Error("surrogate count must be >= 1");
  SurrogateEnsemble ensemble;
  ensemble.source_id = series.id;
  ensemble.algorithm = algorithm;
  ensemble.seed = seed;
  ensemble.members.resize(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t j) {
    std::uint64_t member_seed = derive_seed(seed, "surrogate", j);
    ensemble.members[j] = make_surrogate(series, algorithm, member_seed);
    ensemble.members[j].id = series.id + "#" + to_string(algorithm) + "-" +
                             std::to_string(j);
  });
  return ensemble;
}

SurrogateTestResult rank_order_test(double q_original,
                                    const std::vector<double>& q_surrogates) {
  if (q_surrogates.empty()) throw Error("rank-order test needs at least 1 surrogate");
  const int n = static_cast<int>(q_surrogates.size());

  SurrogateTestResult result;
  result.q_original = q_original;
  result.q_surrogates = q_surrogates;

  int below = 0, tied = 0;
  for (double q : q_surrogates) {
    if (q < q_original) ++below;
    else if (q == q_original) ++tied;
  }
  // Ties with surrogate values count against rejection: the original is
  // extreme only if strictly below or strictly above every surrogate.
  result.rejected = tied == 0 && (below == 0 || below == n);
  if (below == n)
    result.rank = n + 1;
  else if (below == 0 && tied == 0)
    result.rank = 1;
  else
    result.rank = std::min(below + 1 + (tied + 1) / 2, n);  // mid placement

  double mean = 0.0;
  for (double q : q_surrogates) mean += q;
  mean /= n;
  double var = 0.0;
  for (double q : q_surrogates) var += (q - mean) * (q - mean);
  double sd = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
  if (sd > 0.0) {
    result.alpha = std::abs(q_original - mean) / sd;
    result.alpha_defined = true;
  } else {
    result.alpha = std::numeric_limits<double>::infinity();
    result.alpha_defined = false;
  }
  return result;
}

SurrogateTestResult run_surrogate_battery(const TimeSeries& series,
                                          EmbeddingParams params, Statistic statistic,
                                          SurrogateAlgorithm algorithm, int count,
                                          std::uint64_t seed, GneWeighting weighting,
                                          int threads) {
  double q_original = quantify(series, params, Direction::Forward, weighting).get(statistic);
  SurrogateEnsemble ensemble = generate_ensemble(series, algorithm, count, seed, threads);
  std::vector<double> q_surrogates(ensemble.members.size());
  parallel_for(ensemble.members.size(), threads, [&](std::size_t j) {
    q_surrogates[j] =
        quantify(ensemble.members[j], params, Direction::Forward, weighting).get(statistic);
  });
  return rank_order_test(q_original, q_surrogates);
}

}  // namespace opnet
