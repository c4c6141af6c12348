#include <benchmark/benchmark.h>

#include <vector>

#include "opnet/entropy.hpp"
#include "opnet/network.hpp"
#include "opnet/ordinal.hpp"
#include "opnet/rng.hpp"
#include "opnet/time_series.hpp"

namespace {

opnet::TimeSeries series_of(std::size_t n) {
  opnet::Rng rng(42);
  std::vector<double> v(n);
  for (auto& x : v) x = 800.0 + 20.0 * rng.gaussian();
  return opnet::make_series("bench", std::move(v));
}

void BM_ExtractPatterns(benchmark::State& state) {
  auto series = series_of(1490);
  int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto seq = opnet::extract_patterns(series, {m, 1});
    benchmark::DoNotOptimize(seq.codes.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(series.values.size()));
}
BENCHMARK(BM_ExtractPatterns)->Arg(3)->Arg(6)->Arg(10)->Arg(16);

void BM_BuildNetwork(benchmark::State& state) {
  auto series = series_of(1490);
  auto seq = opnet::extract_patterns(series, {static_cast<int>(state.range(0)), 1});
  for (auto _ : state) {
    auto net = opnet::build_network(seq);
    benchmark::DoNotOptimize(net.node_count());
  }
}
BENCHMARK(BM_BuildNetwork)->Arg(3)->Arg(6)->Arg(16);

void BM_Quantify(benchmark::State& state) {
  auto series = series_of(static_cast<std::size_t>(state.range(1)));
  int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto q = opnet::quantify(series, {m, 1});
    benchmark::DoNotOptimize(q.h_gne);
  }
}
BENCHMARK(BM_Quantify)->Args({3, 1490})->Args({8, 1490})->Args({16, 1490})->Args({3, 100000});

}  // namespace

BENCHMARK_MAIN();
