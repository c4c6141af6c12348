#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opnet/entropy.hpp"
#include "opnet/surrogate.hpp"
#include "opnet/time_series.hpp"

namespace opnet {

// Rectangular (m, tau) sweep, bounds inclusive.
struct SweepRange {
  int m_min = 1;
  int m_max = 16;
  int tau_min = 1;
  int tau_max = 4;

  int m_count() const { return m_max - m_min + 1; }
  int tau_count() const { return tau_max - tau_min + 1; }
};

void validate(const SweepRange& sweep);

enum class ComparisonKind {
  IntragroupForwardReverse,  // forward vs reverse within one group
  Intergroup,                // group A vs group B, one direction
  OriginalVsSurrogate,       // originals vs surrogate ensembles
};

const char* to_string(ComparisonKind c);

// How the surrogate side of an OriginalVsSurrogate comparison is sampled:
// one mean per subject, or all surrogate values pooled.
enum class SurrogateMode { SubjectMeans, Pooled };

const char* to_string(SurrogateMode m);
SurrogateMode surrogate_mode_from_string(const std::string& name);

struct GridCell {
  int m = 0;
  int tau = 0;
  std::optional<double> p_value;  // empty => invalid cell
  std::string invalid_reason;
};

// One Mann-Whitney p-value per (m, tau) cell for a fixed statistic and
// comparison. Cells are stored m-major, tau-minor and cover the whole
// sweep; cells whose embedding does not fit every involved series carry no
// p-value and a reason instead.
struct PValueGrid {
  ComparisonKind comparison = ComparisonKind::IntragroupForwardReverse;
  Statistic statistic = Statistic::PermutationEntropy;
  SweepRange sweep;
  std::vector<std::string> groups;             // 1 or 2 entries
  std::optional<Direction> direction;          // intergroup / surrogate grids
  std::optional<SurrogateAlgorithm> algorithm; // surrogate grids only
  std::optional<SurrogateMode> mode;           // surrogate grids only
  std::vector<GridCell> cells;

  const GridCell& cell(int m, int tau) const;
  std::string label() const;  // filename-friendly summary
};

PValueGrid intragroup_asymmetry_grid(const GroupedDataset& dataset,
                                     const std::string& group,
                                     const SweepRange& sweep, Statistic statistic,
                                     GneWeighting weighting = GneWeighting::ExcludeSelfLoops,
                                     int threads = 0);

PValueGrid intergroup_grid(const GroupedDataset& dataset, const std::string& group_a,
                           const std::string& group_b, Direction direction,
                           const SweepRange& sweep, Statistic statistic,
                           GneWeighting weighting = GneWeighting::ExcludeSelfLoops,
                           int threads = 0);

PValueGrid surrogate_comparison_grid(const GroupedDataset& dataset,
                                     const std::string& group,
                                     SurrogateAlgorithm algorithm,
                                     const SweepRange& sweep, Statistic statistic,
                                     int n_surrogates, SurrogateMode mode,
                                     std::uint64_t seed,
                                     GneWeighting weighting = GneWeighting::ExcludeSelfLoops,
                                     int threads = 0);

// Multi-statistic variants sharing one pass of quantifier evaluations.
std::vector<PValueGrid> surrogate_comparison_grids(
    const GroupedDataset& dataset, const std::string& group,
    SurrogateAlgorithm algorithm, const SweepRange& sweep,
    const std::vector<Statistic>& statistics, int n_surrogates, SurrogateMode mode,
    std::uint64_t seed, GneWeighting weighting = GneWeighting::ExcludeSelfLoops,
    int threads = 0);

// CSV emission: header m,tau,p_value,statistic,comparison,direction; one
// row per cell in storage order; NA for invalid p-values and for the
// direction of direction-less grids.
std::string grid_csv(const PValueGrid& grid);
void write_grid_csv(const PValueGrid& grid, const std::filesystem::path& path);

namespace detail {

// Fills proto.cells from a sampler: the sampler returns the two Mann-
// Whitney samples for a valid (m, tau) cell or nullopt with *reason set.
using CellSampler = std::function<std::optional<std::pair<std::vector<double>, std::vector<double>>>(
    int m, int tau, std::string* reason)>;

PValueGrid assemble_grid(PValueGrid proto, const CellSampler& sampler);

}  // namespace detail

}  // namespace opnet
