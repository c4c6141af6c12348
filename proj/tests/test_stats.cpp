#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "opnet/error.hpp"
#include "opnet/grids.hpp"
#include "opnet/mann_whitney.hpp"
#include "opnet/rng.hpp"
#include "opnet/time_series.hpp"
#include "support/mw_enum.hpp"
#include "support/testutil.hpp"

using namespace opnet;
using doctest::Approx;

namespace {

GroupedDataset dataset_of(
    const std::vector<std::pair<std::string, std::vector<std::vector<double>>>>&
        groups) {
  GroupedDataset ds;
  for (const auto& [name, members] : groups) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto s = make_series(name + "_" + std::to_string(i), members[i], name);
      ds.groups[name].push_back(s.id);
      ds.series.push_back(std::move(s));
    }
  }
  return ds;
}

int valid_cells(const PValueGrid& g) {
  int n = 0;
  for (const auto& c : g.cells)
    if (c.p_value) ++n;
  return n;
}

}  // namespace

TEST_CASE("worked example: [1,2] vs [3,4]") {
  auto r = mann_whitney({1.0, 2.0}, {3.0, 4.0});
  CHECK(r.u_statistic == 0.0);
  CHECK(r.method == MwMethod::Exact);
  CHECK(r.p_value == Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("worked example: [1..5] vs [6..10]") {
  auto r = mann_whitney({1, 2, 3, 4, 5}, {6, 7, 8, 9, 10});
  CHECK(r.u_statistic == 0.0);
  CHECK(r.method == MwMethod::Exact);
  CHECK(r.p_value == Approx(2.0 / 252.0).epsilon(1e-12));
}

TEST_CASE("identical samples give p = 1") {
  auto r = mann_whitney({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  CHECK(r.p_value == 1.0);

  auto all_same = mann_whitney({5.0, 5.0}, {5.0, 5.0, 5.0});
  CHECK(all_same.p_value == 1.0);  // zero-variance null
}

TEST_CASE("empty samples are rejected") {
  CHECK_THROWS_AS(mann_whitney({}, {1.0}), Error);
  CHECK_THROWS_AS(mann_whitney({1.0}, {}), Error);
}

TEST_CASE("exact method matches brute-force enumeration") {
  Rng rng(314);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n1 = 1 + rng.below(6);
    std::size_t n2 = 1 + rng.below(6);
    std::set<double> used;  // force tie-free pooled samples
    auto draw = [&] {
      for (;;) {
        double v = std::floor(rng.uniform() * 1000.0);
        if (used.insert(v).second) return v;
      }
    };
    std::vector<double> a, b;
    for (std::size_t i = 0; i < n1; ++i) a.push_back(draw());
    for (std::size_t i = 0; i < n2; ++i) b.push_back(draw());
    used.clear();

    auto r = mann_whitney(a, b);
    CAPTURE(trial);
    CHECK(r.method == MwMethod::Exact);
    CHECK(r.u_statistic == naive::mw_u_of(a, b));
    CHECK(r.p_value == Approx(naive::mw_exact_p(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("two-sided p is symmetric in the samples") {
  std::vector<double> a{1.2, 7.4, 3.3, 9.1};
  std::vector<double> b{2.5, 8.8, 0.4, 5.5, 6.6};
  auto r1 = mann_whitney(a, b);
  auto r2 = mann_whitney(b, a);
  CHECK(r1.p_value == Approx(r2.p_value).epsilon(1e-12));
  CHECK(r1.u_statistic + r2.u_statistic ==
        Approx(static_cast<double>(a.size() * b.size())).epsilon(1e-12));
}

TEST_CASE("p is invariant under common monotone transforms") {
  std::vector<double> a{0.1, 0.9, 0.4, 0.7, 0.2};
  std::vector<double> b{0.3, 0.8, 0.6, 0.5};
  auto before = mann_whitney(a, b);
  for (auto& v : a) v = std::exp(10.0 * v);
  for (auto& v : b) v = std::exp(10.0 * v);
  auto after = mann_whitney(a, b);
  CHECK(before.u_statistic == after.u_statistic);
  CHECK(before.p_value == after.p_value);
}

TEST_CASE("ties route to the normal approximation") {
  auto r = mann_whitney({1.0, 2.0, 2.0}, {3.0, 4.0});
  CHECK(r.method == MwMethod::NormalApprox);
  CHECK(r.p_value >= 0.0);
  CHECK(r.p_value <= 1.0);
}

TEST_CASE("large samples route to the normal approximation") {
  std::vector<double> a = testsupport::gaussian_series(1, 30);
  std::vector<double> b = testsupport::gaussian_series(2, 30);
  auto r = mann_whitney(a, b);  // 900 pairs > 400
  CHECK(r.method == MwMethod::NormalApprox);
  CHECK(r.p_value > 0.05);  // same distribution
}

TEST_CASE("normal approximation tracks the exact method at n = 15") {
  // The exact routine runs at n1 = n2 = 15; the normal value is recomputed
  // here from the returned U with the standard tie-free variance.
  Rng rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(15), b(15);
    std::set<double> used;
    auto draw = [&](double shift) {
      for (;;) {
        double v = std::floor(rng.uniform() * 1e6) + shift;
        if (used.insert(v).second) return v;
      }
    };
    for (auto& v : a) v = draw(0.0);
    for (auto& v : b) v = draw(0.25);
    used.clear();

    auto r = mann_whitney(a, b);
    REQUIRE(r.method == MwMethod::Exact);
    const double mu = 15.0 * 15.0 / 2.0;
    const double var = 15.0 * 15.0 * 31.0 / 12.0;
    double z = std::max(0.0, std::abs(r.u_statistic - mu) - 0.5) / std::sqrt(var);
    double p_norm = std::erfc(z / std::sqrt(2.0));
    CAPTURE(trial);
    CHECK(std::abs(p_norm - r.p_value) < 0.01);
  }
}

TEST_CASE("a strong shift drives p toward zero") {
  std::vector<double> a, b;
  for (int i = 0; i < 12; ++i) {
    a.push_back(static_cast<double>(i) + 0.1);
    b.push_back(static_cast<double>(i) + 100.0);
  }
  auto r = mann_whitney(a, b);
  CHECK(r.p_value < 1e-4);
}

TEST_CASE("sweep validation") {
  CHECK_NOTHROW(validate(SweepRange{1, 16, 1, 4}));
  CHECK_THROWS_AS(validate(SweepRange{0, 4, 1, 2}), Error);
  CHECK_THROWS_AS(validate(SweepRange{4, 3, 1, 2}), Error);
  CHECK_THROWS_AS(validate(SweepRange{1, 21, 1, 2}), Error);
  CHECK_THROWS_AS(validate(SweepRange{1, 4, 3, 2}), Error);
  CHECK_THROWS_AS(validate(SweepRange{1, 4, 0, 2}), Error);
  CHECK(SweepRange{2, 5, 1, 3}.m_count() == 4);
  CHECK(SweepRange{2, 5, 1, 3}.tau_count() == 3);
}

TEST_CASE("intragroup grid is all-ones on tie-free series") {
  // Without ties forward and reverse quantifiers coincide exactly, so every
  // within-group comparison is degenerate and p = 1.
  std::vector<std::vector<double>> members;
  for (int i = 0; i < 4; ++i)
    members.push_back(testsupport::gaussian_series(100 + i, 80));
  auto ds = dataset_of({{"g", members}});

  SweepRange sweep{2, 4, 1, 2};
  auto grid = intragroup_asymmetry_grid(ds, "g", sweep,
                                        Statistic::PermutationEntropy);
  CHECK(grid.comparison == ComparisonKind::IntragroupForwardReverse);
  CHECK(grid.groups == std::vector<std::string>{"g"});
  CHECK_FALSE(grid.direction.has_value());
  REQUIRE(grid.cells.size() == 6);
  for (const auto& c : grid.cells) {
    REQUIRE(c.p_value.has_value());
    CHECK(*c.p_value == 1.0);
  }
}

TEST_CASE("grid covers the sweep and flags unfit cells") {
  std::vector<std::vector<double>> members;
  for (int i = 0; i < 3; ++i)
    members.push_back(testsupport::gaussian_series(200 + i, 40));
  auto ds = dataset_of({{"g", members}});

  SweepRange sweep{1, 16, 1, 4};
  auto grid = intragroup_asymmetry_grid(ds, "g", sweep, Statistic::GlobalNodeEntropy);
  REQUIRE(grid.cells.size() == 64);

  // Storage order is m-major, tau-minor and covers every pair once.
  std::set<std::pair<int, int>> seen;
  for (const auto& c : grid.cells) seen.insert({c.m, c.tau});
  CHECK(seen.size() == 64);
  CHECK(grid.cells.front().m == 1);
  CHECK(grid.cells.front().tau == 1);
  CHECK(grid.cells.back().m == 16);
  CHECK(grid.cells.back().tau == 4);

  // Series of length 40: (m-1)*tau must stay below 39 for two vectors.
  const auto& unfit = grid.cell(16, 4);  // span 60
  CHECK_FALSE(unfit.p_value.has_value());
  CHECK_FALSE(unfit.invalid_reason.empty());
  const auto& fit = grid.cell(8, 4);  // span 28
  CHECK(fit.p_value.has_value());

  // m = 1 has a single pattern: entropies are zero on both sides, p = 1.
  CHECK(grid.cell(1, 1).p_value.has_value());

  CHECK_THROWS_AS(grid.cell(0, 1), Error);
  CHECK_THROWS_AS(grid.cell(1, 5), Error);
}

TEST_CASE("intragroup grid needs two members") {
  auto ds = dataset_of({{"solo", {testsupport::gaussian_series(5, 50)}}});
  CHECK_THROWS_AS(intragroup_asymmetry_grid(ds, "solo", SweepRange{2, 3, 1, 1},
                                            Statistic::PermutationEntropy),
                  Error);
  CHECK_THROWS_AS(intragroup_asymmetry_grid(ds, "ghost", SweepRange{2, 3, 1, 1},
                                            Statistic::PermutationEntropy),
                  Error);
}

TEST_CASE("intergroup grid separates distinct dynamics") {
  std::vector<std::vector<double>> noise, chaos;
  for (int i = 0; i < 8; ++i) {
    noise.push_back(testsupport::gaussian_series(300 + i, 600));
    chaos.push_back(testsupport::logistic_series(400 + i, 600));
  }
  auto ds = dataset_of({{"noise", noise}, {"chaos", chaos}});

  SweepRange cell{4, 4, 1, 1};
  auto grid = intergroup_grid(ds, "chaos", "noise", Direction::Forward, cell,
                              Statistic::PermutationEntropy);
  CHECK(grid.comparison == ComparisonKind::Intergroup);
  CHECK(grid.groups == std::vector<std::string>{"chaos", "noise"});
  REQUIRE(grid.direction.has_value());
  CHECK(*grid.direction == Direction::Forward);
  REQUIRE(grid.cells.size() == 1);
  REQUIRE(grid.cells[0].p_value.has_value());
  CHECK(*grid.cells[0].p_value < 0.05);
}

TEST_CASE("identical groups compare as equal") {
  std::vector<std::vector<double>> members;
  for (int i = 0; i < 5; ++i)
    members.push_back(testsupport::gaussian_series(500 + i, 100));
  auto ds = dataset_of({{"a", members}, {"b", members}});

  auto grid = intergroup_grid(ds, "a", "b", Direction::Forward,
                              SweepRange{2, 3, 1, 2},
                              Statistic::ConditionalEntropy);
  for (const auto& c : grid.cells) {
    REQUIRE(c.p_value.has_value());
    CHECK(*c.p_value == 1.0);
  }
}

TEST_CASE("surrogate grid is reproducible and honest about metadata") {
  std::vector<std::vector<double>> members;
  for (int i = 0; i < 4; ++i)
    members.push_back(testsupport::ar1_series(600 + i, 200, 0.8));
  auto ds = dataset_of({{"g", members}});

  SweepRange sweep{2, 3, 1, 2};
  auto g1 = surrogate_comparison_grid(ds, "g", SurrogateAlgorithm::Shuffle, sweep,
                                      Statistic::PermutationEntropy, 11,
                                      SurrogateMode::SubjectMeans, 99);
  CHECK(g1.comparison == ComparisonKind::OriginalVsSurrogate);
  REQUIRE(g1.algorithm.has_value());
  CHECK(*g1.algorithm == SurrogateAlgorithm::Shuffle);
  REQUIRE(g1.mode.has_value());
  CHECK(*g1.mode == SurrogateMode::SubjectMeans);
  CHECK(valid_cells(g1) == 4);
  for (const auto& c : g1.cells) {
    REQUIRE(c.p_value.has_value());
    CHECK(*c.p_value >= 0.0);
    CHECK(*c.p_value <= 1.0);
  }

  auto g2 = surrogate_comparison_grid(ds, "g", SurrogateAlgorithm::Shuffle, sweep,
                                      Statistic::PermutationEntropy, 11,
                                      SurrogateMode::SubjectMeans, 99);
  for (std::size_t i = 0; i < g1.cells.size(); ++i)
    CHECK(g1.cells[i].p_value == g2.cells[i].p_value);

  auto g3 = surrogate_comparison_grid(ds, "g", SurrogateAlgorithm::Shuffle, sweep,
                                      Statistic::PermutationEntropy, 11,
                                      SurrogateMode::Pooled, 99);
  REQUIRE(g3.mode.has_value());
  CHECK(*g3.mode == SurrogateMode::Pooled);
}

TEST_CASE("multi-statistic surrogate grids match single-statistic calls") {
  std::vector<std::vector<double>> members;
  for (int i = 0; i < 3; ++i)
    members.push_back(testsupport::ar1_series(700 + i, 150, 0.6));
  auto ds = dataset_of({{"g", members}});

  SweepRange sweep{2, 3, 1, 1};
  std::vector<Statistic> stats{Statistic::PermutationEntropy,
                               Statistic::ConditionalEntropy,
                               Statistic::GlobalNodeEntropy};
  auto multi = surrogate_comparison_grids(ds, "g", SurrogateAlgorithm::Aaft, sweep,
                                          stats, 7, SurrogateMode::SubjectMeans, 5);
  REQUIRE(multi.size() == 3);
  for (std::size_t si = 0; si < stats.size(); ++si) {
    auto single = surrogate_comparison_grid(ds, "g", SurrogateAlgorithm::Aaft,
                                            sweep, stats[si], 7,
                                            SurrogateMode::SubjectMeans, 5);
    REQUIRE(multi[si].statistic == stats[si]);
    REQUIRE(multi[si].cells.size() == single.cells.size());
    for (std::size_t c = 0; c < single.cells.size(); ++c)
      CHECK(multi[si].cells[c].p_value == single.cells[c].p_value);
  }
}

TEST_CASE("grid CSV format") {
  std::vector<std::vector<double>> members;
  for (int i = 0; i < 3; ++i)
    members.push_back(testsupport::gaussian_series(800 + i, 30));
  auto ds = dataset_of({{"g", members}});

  auto grid = intragroup_asymmetry_grid(ds, "g", SweepRange{14, 16, 3, 4},
                                        Statistic::PermutationEntropy);
  auto csv = grid_csv(grid);

  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    auto nl = csv.find('\n', pos);
    lines.push_back(csv.substr(pos, nl - pos));
    pos = nl + 1;
  }
  REQUIRE(lines.size() == 7);  // header + 3*2 cells
  CHECK(lines[0] == "m,tau,p_value,statistic,comparison,direction");
  // Length 30 fits nothing at m >= 14, tau >= 3: all cells invalid.
  CHECK(lines[1].find("14,3,NA,h_pe,intragroup_fwd_vs_rev,NA") == 0);

  testsupport::TempDir dir("gridcsv");
  write_grid_csv(grid, dir.path() / "g.csv");
  CHECK(testsupport::read_text(dir.path() / "g.csv") == csv);

  // An intergroup grid carries its direction in the last column.
  auto ig = intergroup_grid(ds, "g", "g", Direction::Reverse, SweepRange{2, 2, 1, 1},
                            Statistic::GlobalNodeEntropy);
  auto icsv = grid_csv(ig);
  CHECK(icsv.find(",h_gne,intergroup,reverse") != std::string::npos);
}

TEST_CASE("grid labels are filename-friendly") {
  std::vector<std::vector<double>> members;
  for (int i = 0; i < 2; ++i)
    members.push_back(testsupport::gaussian_series(900 + i, 40));
  auto ds = dataset_of({{"g", members}});
  auto grid = intragroup_asymmetry_grid(ds, "g", SweepRange{2, 2, 1, 1},
                                        Statistic::PermutationEntropy);
  CHECK(grid.label() == "intragroup_fwd_vs_rev_g_h_pe");
}
