#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "opnet/entropy.hpp"
#include "opnet/filter.hpp"
#include "opnet/grids.hpp"
#include "opnet/io.hpp"
#include "opnet/lorenz.hpp"
#include "opnet/surrogate.hpp"
#include "opnet/time_series.hpp"

namespace opnet {

struct FilterConfig {
  bool enabled = true;
  FilterOptions options;
};

struct SurrogateConfig {
  std::vector<SurrogateAlgorithm> algorithms;  // empty => no surrogate grids
  int count = 100;
  SurrogateMode mode = SurrogateMode::SubjectMeans;
};

// Full description of a batch analysis run. Every random choice derives
// from `seed`, so a rerun with the same config reproduces every output
// byte for byte.
struct RunConfig {
  std::filesystem::path manifest_path;
  SeriesFormat input_format = SeriesFormat::Plain;
  std::filesystem::path output_dir;

  SweepRange sweep;
  std::vector<Direction> directions{Direction::Forward, Direction::Reverse};
  std::vector<Statistic> statistics{Statistic::PermutationEntropy,
                                    Statistic::ConditionalEntropy,
                                    Statistic::GlobalNodeEntropy};
  // Accepted series longer than this are truncated to it; shorter ones are
  // kept whole and noted. 0 keeps every series at full length.
  std::size_t series_length = 1490;

  FilterConfig filter;
  SurrogateConfig surrogates;

  // Comparison selection. Empty intragroup list => every group with at
  // least two accepted members; empty intergroup list => every unordered
  // pair of such groups. Explicitly named groups must exist and have >= 2
  // accepted members.
  std::vector<std::string> intragroup_groups;
  std::vector<std::pair<std::string, std::string>> intergroup_pairs;

  GneWeighting gne_weighting = GneWeighting::ExcludeSelfLoops;
  std::uint64_t seed = 0;
  int threads = 0;
  bool emit_plots = false;
};

struct SeriesOutcome {
  std::string id;
  std::string group;
  std::size_t original_length = 0;
  std::size_t analyzed_length = 0;  // after filtering and truncation
  std::size_t removed = 0;
  std::size_t replaced = 0;
  double modified_fraction = 0.0;
  bool accepted = true;
  std::string note;
};

struct QuantifierRow {
  std::string series_id;
  std::string group;
  int m = 0;
  int tau = 0;
  Direction direction = Direction::Forward;
  double h_pe = 0.0;
  double h_cpe = 0.0;
  double h_gne = 0.0;
};

struct GridOutput {
  PValueGrid grid;
  std::string csv_path;   // relative to output_dir, filled by write_outputs
  std::string plot_path;  // empty unless plots were emitted
};

struct AnalysisReport {
  std::string tool_version;
  RunConfig config;
  std::vector<SeriesOutcome> series;
  std::vector<QuantifierRow> quantifiers;  // manifest order, then m, tau, direction
  std::vector<GridOutput> grids;
  std::vector<std::string> notes;
  std::string quantifier_csv_path;  // filled by write_outputs
};

// Loads the manifest, filters, evaluates the quantifier table and all
// requested comparison grids. Pure computation: nothing is written.
AnalysisReport run_pipeline(const RunConfig& config);

// Writes quantifiers.csv, grids/*.csv, optional grids/*.svg and report.json
// under config.output_dir, filling the path fields. Creates directories.
void write_outputs(AnalysisReport& report);

// Serialized report (pretty JSON, schema/report.schema.json shape).
std::string report_json(const AnalysisReport& report);

std::string quantifier_csv(const std::vector<QuantifierRow>& rows);

// Per-grid p-vs-m curves (one per tau) with a dashed p = 0.05 reference.
void write_grid_svg(const PValueGrid& grid, const std::filesystem::path& path);

// Lorenz validation experiment: an ensemble of x-peak series, each tested
// against surrogate ensembles of every requested algorithm and statistic.
struct LorenzDemoConfig {
  LorenzParams params;
  int series_count = 10;
  int peaks_per_series = 1490;
  EmbeddingParams embedding{3, 1};
  std::vector<SurrogateAlgorithm> algorithms{SurrogateAlgorithm::Shuffle,
                                             SurrogateAlgorithm::PhaseRandomized,
                                             SurrogateAlgorithm::Aaft};
  std::vector<Statistic> statistics{Statistic::PermutationEntropy,
                                    Statistic::ConditionalEntropy,
                                    Statistic::GlobalNodeEntropy};
  int surrogate_count = 100;
  GneWeighting gne_weighting = GneWeighting::ExcludeSelfLoops;
  std::uint64_t seed = 0;
  int threads = 0;
  std::filesystem::path output_dir;  // only used by write_lorenz_outputs
};

struct LorenzBatteryOutcome {
  std::string series_id;
  SurrogateAlgorithm algorithm = SurrogateAlgorithm::Shuffle;
  Statistic statistic = Statistic::PermutationEntropy;
  SurrogateTestResult result;
};

struct LorenzDemoResult {
  LorenzDemoConfig config;
  std::vector<TimeSeries> peak_series;
  std::vector<LorenzBatteryOutcome> outcomes;

  // Number of series whose null was rejected for (algorithm, statistic).
  int rejection_count(SurrogateAlgorithm algorithm, Statistic statistic) const;
};

LorenzDemoResult run_lorenz_demo(const LorenzDemoConfig& config);

// Writes the peak series (plain format) and lorenz_demo.json summary.
void write_lorenz_outputs(const LorenzDemoResult& result);

}  // namespace opnet
