#include <benchmark/benchmark.h>

#include <vector>

#include "opnet/fft.hpp"
#include "opnet/rng.hpp"
#include "opnet/surrogate.hpp"
#include "opnet/time_series.hpp"

namespace {

opnet::TimeSeries series_of(std::size_t n) {
  opnet::Rng rng(7);
  std::vector<double> v(n);
  double x = 0.0;
  for (auto& e : v) {
    x = 0.9 * x + rng.gaussian();
    e = x;
  }
  return opnet::make_series("bench", std::move(v));
}

void BM_Fft(benchmark::State& state) {
  auto series = series_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto spec = opnet::fft_real(series.values);
    benchmark::DoNotOptimize(spec.data());
  }
}
// 1490 exercises the non-power-of-two path used by the reference dataset.
BENCHMARK(BM_Fft)->Arg(1024)->Arg(1490)->Arg(4096)->Arg(16384);

void BM_Surrogate(benchmark::State& state) {
  auto series = series_of(1490);
  auto alg = static_cast<opnet::SurrogateAlgorithm>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto s = opnet::make_surrogate(series, alg, seed++);
    benchmark::DoNotOptimize(s.values.data());
  }
  state.SetLabel(opnet::to_string(alg));
}
BENCHMARK(BM_Surrogate)
    ->Arg(static_cast<int>(opnet::SurrogateAlgorithm::Shuffle))
    ->Arg(static_cast<int>(opnet::SurrogateAlgorithm::PhaseRandomized))
    ->Arg(static_cast<int>(opnet::SurrogateAlgorithm::Aaft));

void BM_Ensemble(benchmark::State& state) {
  auto series = series_of(1490);
  for (auto _ : state) {
    auto ens = opnet::generate_ensemble(series, opnet::SurrogateAlgorithm::Aaft,
                                        static_cast<int>(state.range(0)), 3);
    benchmark::DoNotOptimize(ens.members.size());
  }
}
BENCHMARK(BM_Ensemble)->Arg(39)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
