#include "opnet/grids.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "opnet/error.hpp"
#include "opnet/io.hpp"
#include "opnet/mann_whitney.hpp"
#include "opnet/parallel.hpp"
#include "opnet/rng.hpp"

namespace opnet {

void validate(const SweepRange& sweep) {
  if (sweep.m_min < 1 || sweep.m_max < sweep.m_min)
    throw Error("invalid m range " + std::to_string(sweep.m_min) + ".." +
                std::to_string(sweep.m_max));
  if (sweep.m_max > 20)
    throw Error("m range maximum " + std::to_string(sweep.m_max) + " exceeds 20");
  if (sweep.tau_min < 1 || sweep.tau_max < sweep.tau_min)
    throw Error("invalid tau range " + std::to_string(sweep.tau_min) + ".." +
                std::to_string(sweep.tau_max));
}

const char* to_string(ComparisonKind c) {
  switch (c) {
    case ComparisonKind::IntragroupForwardReverse: return "intragroup_fwd_vs_rev";
    case ComparisonKind::Intergroup: return "intergroup";
    case ComparisonKind::OriginalVsSurrogate: return "orig_vs_surrogate";
  }
  throw Error("unhandled comparison kind");
}

const char* to_string(SurrogateMode m) {
  return m == SurrogateMode::SubjectMeans ? "subject_means" : "pooled";
}

SurrogateMode surrogate_mode_from_string(const std::string& name) {
  if (name == "subject_means") return SurrogateMode::SubjectMeans;
  if (name == "pooled") return SurrogateMode::Pooled;
  throw Error("unknown surrogate mode '" + name +
              "' (expected subject_means|pooled)");
}

const GridCell& PValueGrid::cell(int m, int tau) const {
  if (m < sweep.m_min || m > sweep.m_max || tau < sweep.tau_min || tau > sweep.tau_max)
    throw Error("cell (" + std::to_string(m) + ", " + std::to_string(tau) +
                ") outside the sweep");
  std::size_t idx = static_cast<std::size_t>(m - sweep.m_min) *
                        static_cast<std::size_t>(sweep.tau_count()) +
                    static_cast<std::size_t>(tau - sweep.tau_min);
  return cells.at(idx);
}

std::string PValueGrid::label() const {
  std::string out = std::string(to_string(comparison));
  for (const auto& g : groups) out += "_" + g;
  if (algorithm) out += std::string("_") + to_string(*algorithm);
  out += std::string("_") + to_string(statistic);
  if (direction) out += std::string("_") + to_string(*direction);
  return out;
}

namespace detail {

PValueGrid assemble_grid(PValueGrid proto, const CellSampler& sampler) {
  validate(proto.sweep);
  proto.cells.clear();
  proto.cells.reserve(static_cast<std::size_t>(proto.sweep.m_count()) *
                      static_cast<std::size_t>(proto.sweep.tau_count()));
  for (int m = proto.sweep.m_min; m <= proto.sweep.m_max; ++m) {
    for (int tau = proto.sweep.tau_min; tau <= proto.sweep.tau_max; ++tau) {
      GridCell cell;
      cell.m = m;
      cell.tau = tau;
      std::string reason;
      auto samples = sampler(m, tau, &reason);
      if (samples) {
        cell.p_value = mann_whitney(samples->first, samples->second).p_value;
      } else {
        cell.invalid_reason = reason.empty() ? "embedding does not fit" : reason;
      }
      proto.cells.push_back(std::move(cell));
    }
  }
  return proto;
}

}  // namespace detail

namespace {

// Quantifier values for every member of a group at every valid sweep cell,
// both directions on demand. Evaluations run as one parallel batch.
struct GroupQuantifiers {
  std::vector<const TimeSeries*> members;
  // per cell index: per member: triple; empty vector when the cell is
  // invalid for at least one member.
  std::vector<std::vector<QuantifierTriple>> forward;
  std::vector<std::vector<QuantifierTriple>> reverse;
  std::vector<std::string> invalid_reason;  // per cell, empty when valid
};

std::size_t cell_index(const SweepRange& sweep, int m, int tau) {
  return static_cast<std::size_t>(m - sweep.m_min) *
             static_cast<std::size_t>(sweep.tau_count()) +
         static_cast<std::size_t>(tau - sweep.tau_min);
}

// Reason string when some member of a group cannot support (m, tau).
std::string unfit_reason(const std::vector<const TimeSeries*>& members, int m,
                         int tau) {
  std::size_t unfit = 0;
  std::size_t shortest = 0;
  bool first = true;
  for (const auto* s : members) {
    if (!embedding_fits({m, tau}, s->values.size())) {
      ++unfit;
      if (first || s->values.size() < shortest) shortest = s->values.size();
      first = false;
    }
  }
  if (unfit == 0) return "";
  return "embedding (m=" + std::to_string(m) + ", tau=" + std::to_string(tau) +
         ") does not fit " + std::to_string(unfit) +
         " member series (shortest length " + std::to_string(shortest) + ")";
}

GroupQuantifiers evaluate_group(const GroupedDataset& dataset,
                                const std::string& group, const SweepRange& sweep,
                                bool need_forward, bool need_reverse,
                                GneWeighting weighting, int threads) {
  GroupQuantifiers gq;
  gq.members = dataset.members(group);
  if (gq.members.size() < 2)
    throw Error("group '" + group + "' needs >= 2 members, has " +
                std::to_string(gq.members.size()));

  const std::size_t n_cells = static_cast<std::size_t>(sweep.m_count()) *
                              static_cast<std::size_t>(sweep.tau_count());
  gq.forward.resize(n_cells);
  gq.reverse.resize(n_cells);
  gq.invalid_reason.resize(n_cells);

  struct Job {
    std::size_t cell;
    int m, tau;
  };
  std::vector<Job> jobs;
  for (int m = sweep.m_min; m <= sweep.m_max; ++m) {
    for (int tau = sweep.tau_min; tau <= sweep.tau_max; ++tau) {
      std::size_t idx = cell_index(sweep, m, tau);
      std::string reason = unfit_reason(gq.members, m, tau);
      if (!reason.empty()) {
        gq.invalid_reason[idx] = reason;
        continue;
      }
      if (need_forward) gq.forward[idx].resize(gq.members.size());
      if (need_reverse) gq.reverse[idx].resize(gq.members.size());
      jobs.push_back({idx, m, tau});
    }
  }

  parallel_for(jobs.size() * gq.members.size(), threads, [&](std::size_t k) {
    const Job& job = jobs[k / gq.members.size()];
    std::size_t member = k % gq.members.size();
    EmbeddingParams params{job.m, job.tau};
    const TimeSeries& s = *gq.members[member];
    if (need_forward)
      gq.forward[job.cell][member] = quantify(s, params, Direction::Forward, weighting);
    if (need_reverse)
      gq.reverse[job.cell][member] = quantify(s, params, Direction::Reverse, weighting);
  });
  return gq;
}

std::vector<double> pick(const std::vector<QuantifierTriple>& triples, Statistic s) {
  std::vector<double> out;
  out.reserve(triples.size());
  for (const auto& t : triples) out.push_back(t.get(s));
  return out;
}

}  // namespace

PValueGrid intragroup_asymmetry_grid(const GroupedDataset& dataset,
                                     const std::string& group,
                                     const SweepRange& sweep, Statistic statistic,
                                     GneWeighting weighting, int threads) {
  validate(sweep);
  GroupQuantifiers gq =
      evaluate_group(dataset, group, sweep, true, true, weighting, threads);

  PValueGrid proto;
  proto.comparison = ComparisonKind::IntragroupForwardReverse;
  proto.statistic = statistic;
  proto.sweep = sweep;
  proto.groups = {group};
  return detail::assemble_grid(proto, [&](int m, int tau, std::string* reason)
                                   -> std::optional<std::pair<std::vector<double>,
                                                              std::vector<double>>> {
    std::size_t idx = cell_index(sweep, m, tau);
    if (!gq.invalid_reason[idx].empty()) {
      *reason = gq.invalid_reason[idx];
      return std::nullopt;
    }
    return std::make_pair(pick(gq.forward[idx], statistic),
                          pick(gq.reverse[idx], statistic));
  });
}

PValueGrid intergroup_grid(const GroupedDataset& dataset, const std::string& group_a,
                           const std::string& group_b, Direction direction,
                           const SweepRange& sweep, Statistic statistic,
                           GneWeighting weighting, int threads) {
  validate(sweep);
  bool fwd = direction == Direction::Forward;
  GroupQuantifiers ga =
      evaluate_group(dataset, group_a, sweep, fwd, !fwd, weighting, threads);
  GroupQuantifiers gb =
      evaluate_group(dataset, group_b, sweep, fwd, !fwd, weighting, threads);

  PValueGrid proto;
  proto.comparison = ComparisonKind::Intergroup;
  proto.statistic = statistic;
  proto.sweep = sweep;
  proto.groups = {group_a, group_b};
  proto.direction = direction;
  return detail::assemble_grid(proto, [&](int m, int tau, std::string* reason)
                                   -> std::optional<std::pair<std::vector<double>,
                                                              std::vector<double>>> {
    std::size_t idx = cell_index(sweep, m, tau);
    if (!ga.invalid_reason[idx].empty() || !gb.invalid_reason[idx].empty()) {
      *reason = !ga.invalid_reason[idx].empty() ? ga.invalid_reason[idx]
                                                : gb.invalid_reason[idx];
      return std::nullopt;
    }
    const auto& a = fwd ? ga.forward[idx] : ga.reverse[idx];
    const auto& b = fwd ? gb.forward[idx] : gb.reverse[idx];
    return std::make_pair(pick(a, statistic), pick(b, statistic));
  });
}

std::vector<PValueGrid> surrogate_comparison_grids(
    const GroupedDataset& dataset, const std::string& group,
    SurrogateAlgorithm algorithm, const SweepRange& sweep,
    const std::vector<Statistic>& statistics, int n_surrogates, SurrogateMode mode,
    std::uint64_t seed, GneWeighting weighting, int threads) {
  validate(sweep);
  if (statistics.empty()) throw Error("no statistics requested");
  if (n_surrogates < 1) throw Error("surrogate count must be >= 1");
  auto members = dataset.members(group);
  if (members.empty()) throw Error("group '" + group + "' is empty");

  // One ensemble per subject, reused across every sweep cell (the paper's
  // procedure: fixed surrogate set, quantifiers swept over it).
  std::vector<SurrogateEnsemble> ensembles(members.size());
  parallel_for(members.size(), threads, [&](std::size_t s) {
    std::uint64_t subject_seed = derive_seed(
        seed, std::string("surrogate-grid:") + to_string(algorithm) + ":" +
                  members[s]->id);
    ensembles[s] =
        generate_ensemble(*members[s], algorithm, n_surrogates, subject_seed, 1);
  });

  const std::size_t n_cells = static_cast<std::size_t>(sweep.m_count()) *
                              static_cast<std::size_t>(sweep.tau_count());
  struct CellData {
    std::string invalid_reason;
    std::vector<QuantifierTriple> original;              // per subject
    std::vector<std::vector<QuantifierTriple>> surrogate;  // per subject, member
  };
  std::vector<CellData> data(n_cells);

  struct Job {
    std::size_t cell;
    int m, tau;
  };
  std::vector<Job> jobs;
  for (int m = sweep.m_min; m <= sweep.m_max; ++m) {
    for (int tau = sweep.tau_min; tau <= sweep.tau_max; ++tau) {
      std::size_t idx = cell_index(sweep, m, tau);
      std::string reason = unfit_reason(members, m, tau);
      if (!reason.empty()) {
        data[idx].invalid_reason = reason;
        continue;
      }
      data[idx].original.resize(members.size());
      data[idx].surrogate.assign(members.size(),
                                 std::vector<QuantifierTriple>(
                                     static_cast<std::size_t>(n_surrogates)));
      jobs.push_back({idx, m, tau});
    }
  }

  const std::size_t per_cell = members.size() * (1 + static_cast<std::size_t>(n_surrogates));
  parallel_for(jobs.size() * per_cell, threads, [&](std::size_t k) {
    const Job& job = jobs[k / per_cell];
    std::size_t rem = k % per_cell;
    std::size_t subject = rem / (1 + static_cast<std::size_t>(n_surrogates));
    std::size_t item = rem % (1 + static_cast<std::size_t>(n_surrogates));
    EmbeddingParams params{job.m, job.tau};
    if (item == 0) {
      data[job.cell].original[subject] =
          quantify(*members[subject], params, Direction::Forward, weighting);
    } else {
      data[job.cell].surrogate[subject][item - 1] =
          quantify(ensembles[subject].members[item - 1], params, Direction::Forward,
                   weighting);
    }
  });

  std::vector<PValueGrid> grids;
  grids.reserve(statistics.size());
  for (Statistic statistic : statistics) {
    PValueGrid proto;
    proto.comparison = ComparisonKind::OriginalVsSurrogate;
    proto.statistic = statistic;
    proto.sweep = sweep;
    proto.groups = {group};
    proto.direction = Direction::Forward;
    proto.algorithm = algorithm;
    proto.mode = mode;
    grids.push_back(detail::assemble_grid(
        proto, [&](int m, int tau, std::string* reason)
                   -> std::optional<std::pair<std::vector<double>, std::vector<double>>> {
          std::size_t idx = cell_index(sweep, m, tau);
          if (!data[idx].invalid_reason.empty()) {
            *reason = data[idx].invalid_reason;
            return std::nullopt;
          }
          std::vector<double> originals = pick(data[idx].original, statistic);
          std::vector<double> surrogate_side;
          if (mode == SurrogateMode::SubjectMeans) {
            surrogate_side.reserve(members.size());
            for (const auto& per_subject : data[idx].surrogate) {
              double mean = 0.0;
              for (const auto& t : per_subject) mean += t.get(statistic);
              surrogate_side.push_back(mean / static_cast<double>(per_subject.size()));
            }
          } else {
            surrogate_side.reserve(members.size() *
                                   static_cast<std::size_t>(n_surrogates));
            for (const auto& per_subject : data[idx].surrogate)
              for (const auto& t : per_subject)
                surrogate_side.push_back(t.get(statistic));
          }
          return std::make_pair(std::move(originals), std::move(surrogate_side));
        }));
  }
  return grids;
}

PValueGrid surrogate_comparison_grid(const GroupedDataset& dataset,
                                     const std::string& group,
                                     SurrogateAlgorithm algorithm,
                                     const SweepRange& sweep, Statistic statistic,
                                     int n_surrogates, SurrogateMode mode,
                                     std::uint64_t seed, GneWeighting weighting,
                                     int threads) {
  return surrogate_comparison_grids(dataset, group, algorithm, sweep, {statistic},
                                    n_surrogates, mode, seed, weighting, threads)
      .front();
}

std::string grid_csv(const PValueGrid& grid) {
  std::ostringstream out;
  out << "m,tau,p_value,statistic,comparison,direction\n";
  const char* direction =
      grid.direction ? to_string(*grid.direction) : "NA";
  for (const auto& cell : grid.cells) {
    out << cell.m << ',' << cell.tau << ',';
    if (cell.p_value)
      out << format_double(*cell.p_value);
    else
      out << "NA";
    out << ',' << to_string(grid.statistic) << ',' << to_string(grid.comparison)
        << ',' << direction << '\n';
  }
  return out.str();
}

void write_grid_csv(const PValueGrid& grid, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write grid CSV '" + path.string() + "'");
  out << grid_csv(grid);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace opnet
