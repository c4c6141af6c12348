#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "opnet/entropy.hpp"
#include "opnet/error.hpp"
#include "opnet/network.hpp"
#include "opnet/ordinal.hpp"
#include "opnet/time_series.hpp"
#include "support/naive_quantifiers.hpp"
#include "support/testutil.hpp"

using namespace opnet;
using doctest::Approx;

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn3 = 1.0986122886681098;

QuantifierTriple q_of(const std::vector<double>& values, int m, int tau,
                      Direction d = Direction::Forward,
                      GneWeighting w = GneWeighting::ExcludeSelfLoops) {
  return quantify(make_series("q", values), {m, tau}, d, w);
}

}  // namespace

TEST_CASE("statistic names round-trip") {
  CHECK(std::string(to_string(Statistic::PermutationEntropy)) == "h_pe");
  CHECK(std::string(to_string(Statistic::ConditionalEntropy)) == "h_cpe");
  CHECK(std::string(to_string(Statistic::GlobalNodeEntropy)) == "h_gne");
  CHECK(statistic_from_string("h_pe") == Statistic::PermutationEntropy);
  CHECK(statistic_from_string("h_cpe") == Statistic::ConditionalEntropy);
  CHECK(statistic_from_string("h_gne") == Statistic::GlobalNodeEntropy);
  CHECK_THROWS_AS(statistic_from_string("h_x"), Error);
}

TEST_CASE("worked example: permutation entropy of a 4-point series") {
  // Patterns at m=2: down, up, down -> frequencies 2/3, 1/3.
  auto q = q_of({0.5, 0.2, 0.9, 0.1}, 2, 1);
  const double expected = kLn3 - (2.0 / 3.0) * kLn2;  // == 0.636514168294813
  CHECK(q.h_pe == Approx(expected).epsilon(1e-12));
  CHECK(q.h_pe == Approx(0.636514168294813).epsilon(1e-12));
}

TEST_CASE("worked example: conditional entropy of symbol run A,B,A,A,B") {
  // Values chosen so the m=2 pattern sequence is up,down,up,up,down.
  auto s = make_series("cpe", {1.0, 3.0, 2.0, 4.0, 6.0, 5.0});
  auto net = build_network(extract_patterns(s, {2, 1}));
  const double expected = (3.0 / 5.0) * (kLn3 - (2.0 / 3.0) * kLn2);
  CHECK(conditional_entropy(net) == Approx(expected).epsilon(1e-12));
  CHECK(conditional_entropy(net) == Approx(0.3819085009768878).epsilon(1e-12));
}

TEST_CASE("worked example: global node entropy of symbol run A,B,C,A,C,B") {
  // At m=3, tau=2 this series emits three distinct patterns in the order
  // A,B,C,A,C,B; the only nonzero node entropies are the two ln 2 rows.
  auto s = make_series("gne", {5.0, 11.0, 1.0, 14.0, 2.0, 10.0, 3.0, 12.0,
                               4.0, 9.0});
  auto net = build_network(extract_patterns(s, {3, 2}));
  const double expected = 0.8 * kLn2;
  CHECK(global_node_entropy(net) == Approx(expected).epsilon(1e-12));
  CHECK(global_node_entropy(net) == Approx(0.5545177444479562).epsilon(1e-12));

  // Same fixture pins the other two quantifiers.
  CHECK(permutation_entropy(extract_patterns(s, {3, 2})) ==
        Approx(kLn3).epsilon(1e-12));
  CHECK(conditional_entropy(net) == Approx((2.0 / 3.0) * kLn2).epsilon(1e-12));
}

TEST_CASE("self-loop weighting variants on symbol run A,A,B,A,C") {
  auto s = make_series("w", {1.0, 10.0, 2.0, 11.0, 3.0, 12.0, 0.0, 13.0, 1.5});
  auto net = build_network(extract_patterns(s, {3, 2}));
  CHECK(global_node_entropy(net, GneWeighting::ExcludeSelfLoops) ==
        Approx((2.0 / 3.0) * kLn2).epsilon(1e-12));
  CHECK(global_node_entropy(net, GneWeighting::IncludeSelfLoops) ==
        Approx(0.75 * kLn2).epsilon(1e-12));
}

TEST_CASE("strictly monotone series scores zero on all quantifiers") {
  auto q = q_of({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 3, 1);
  CHECK(q.h_pe == 0.0);
  CHECK(q.h_cpe == 0.0);
  CHECK(q.h_gne == 0.0);
}

TEST_CASE("permutation entropy is bounded by ln of the alphabet") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    auto vals = testsupport::gaussian_series(seed, 400);
    for (int m : {2, 3, 4}) {
      auto q = q_of(vals, m, 1);
      double mfact = 1.0;
      for (int i = 2; i <= m; ++i) mfact *= i;
      CHECK(q.h_pe > 0.0);
      CHECK(q.h_pe <= std::log(mfact) + 1e-12);
      // Conditioning cannot add entropy; the cushion covers the one-symbol
      // difference between the transition-target marginal and the full
      // symbol distribution (O(ln n / n) for n windows).
      CHECK(q.h_cpe <= q.h_pe + 0.02);
      CHECK(q.h_gne >= 0.0);
    }
  }
}

TEST_CASE("all quantifiers match the dense reference implementation") {
  opnet::Rng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 10 + static_cast<int>(rng.below(21));  // 10..30
    int m = 2 + static_cast<int>(rng.below(2));    // 2..3
    int tau = 1 + static_cast<int>(rng.below(2));  // 1..2
    if (!embedding_fits({m, tau}, static_cast<std::size_t>(n))) continue;
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (auto& v : vals) v = rng.uniform();
    if (trial % 4 == 0) {
      // quantize to force ties
      for (auto& v : vals) v = std::floor(v * 4.0);
    }
    for (bool reverse : {false, true}) {
      auto mine = q_of(vals, m, tau,
                       reverse ? Direction::Reverse : Direction::Forward);
      auto ref = naive::quantifiers(vals, m, tau, reverse);
      CAPTURE(trial);
      CAPTURE(n);
      CAPTURE(m);
      CAPTURE(tau);
      CHECK(mine.h_pe == Approx(ref.h_pe).epsilon(1e-12));
      CHECK(mine.h_cpe == Approx(ref.h_cpe).epsilon(1e-12));
      CHECK(mine.h_gne == Approx(ref.h_gne).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantifiers are invariant under monotone transforms") {
  for (std::uint64_t seed : {41u, 42u}) {
    auto vals = testsupport::gaussian_series(seed, 200);
    std::vector<double> transformed(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
      transformed[i] = std::exp(vals[i]);
    for (int m : {2, 3, 5}) {
      auto seq_a = extract_patterns(make_series("a", vals), {m, 1});
      auto seq_b = extract_patterns(make_series("b", transformed), {m, 1});
      CHECK(seq_a.codes == seq_b.codes);  // bitwise identical symbols
      auto qa = q_of(vals, m, 1);
      auto qb = q_of(transformed, m, 1);
      CHECK(qa.h_pe == Approx(qb.h_pe).epsilon(1e-12));
      CHECK(qa.h_cpe == Approx(qb.h_cpe).epsilon(1e-12));
      CHECK(qa.h_gne == Approx(qb.h_gne).epsilon(1e-12));
    }
  }
}

TEST_CASE("tie-free h_pe is direction-invariant; transitions nearly so") {
  // With distinct values every window of the reversed series is the mirror
  // of a forward window, a rank bijection, so the pattern census and h_pe
  // coincide exactly. The transition-based quantifiers see the reversed
  // edges (the transpose), whose conditioning marginal omits the opposite
  // endpoint symbol: they agree only up to an O(ln n / n) boundary term.
  for (std::uint64_t seed : {51u, 52u, 53u}) {
    auto vals = testsupport::ar1_series(seed, 300, 0.8);
    double boundary = 4.0 * std::log(static_cast<double>(vals.size())) /
                      static_cast<double>(vals.size());
    for (int m : {2, 3, 4}) {
      auto f = q_of(vals, m, 1, Direction::Forward);
      auto r = q_of(vals, m, 1, Direction::Reverse);
      CHECK(f.h_pe == Approx(r.h_pe).epsilon(1e-9));
      CHECK(std::abs(f.h_cpe - r.h_cpe) < boundary);
      CHECK(std::abs(f.h_gne - r.h_gne) < boundary);
    }
  }
}

TEST_CASE("quantifier triple carries its context") {
  auto s = make_series("ctx", testsupport::gaussian_series(6, 50), "grp");
  auto q = quantify(s, {3, 2}, Direction::Reverse);
  CHECK(q.series_id == "ctx");
  CHECK(q.params.m == 3);
  CHECK(q.params.tau == 2);
  CHECK(q.direction == Direction::Reverse);
  CHECK(q.get(Statistic::PermutationEntropy) == q.h_pe);
  CHECK(q.get(Statistic::ConditionalEntropy) == q.h_cpe);
  CHECK(q.get(Statistic::GlobalNodeEntropy) == q.h_gne);
}

TEST_CASE("i.i.d. symbols push conditional entropy toward permutation entropy") {
  // For an i.i.d. symbol stream the next pattern is independent of the
  // current one, so h_cpe approaches h_pe for long series.
  auto vals = testsupport::gaussian_series(99, 20000);
  auto q = q_of(vals, 2, 1);
  // m=2 on i.i.d. data is not i.i.d. symbol-wise (windows overlap), so only
  // a loose agreement is expected; the strict check uses tau >= m.
  CHECK(q.h_cpe <= q.h_pe + 1e-3);
  auto q2 = q_of(vals, 2, 3);
  CHECK(q2.h_pe == Approx(kLn2).epsilon(1e-3));
  CHECK(q2.h_cpe == Approx(q2.h_pe).epsilon(5e-3));
}
