#include "opnet/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "opnet/error.hpp"
#include "opnet/parallel.hpp"
#include "opnet/rng.hpp"
#include "opnet/version.hpp"

namespace opnet {

namespace {

void validate_config(const RunConfig& config) {
  validate(config.sweep);
  if (config.directions.empty()) throw Error("no directions configured");
  std::set<Direction> dirs(config.directions.begin(), config.directions.end());
  if (dirs.size() != config.directions.size())
    throw Error("duplicate directions configured");
  if (config.statistics.empty()) throw Error("no statistics configured");
  std::set<Statistic> stats(config.statistics.begin(), config.statistics.end());
  if (stats.size() != config.statistics.size())
    throw Error("duplicate statistics configured");
  if (!config.surrogates.algorithms.empty() && config.surrogates.count < 1)
    throw Error("surrogate count must be >= 1");
  if (config.manifest_path.empty()) throw Error("no manifest path configured");
}

bool has_direction(const RunConfig& config, Direction d) {
  return std::find(config.directions.begin(), config.directions.end(), d) !=
         config.directions.end();
}

std::string unfit_note(const std::vector<const TimeSeries*>& members, int m, int tau) {
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

}  // namespace

AnalysisReport run_pipeline(const RunConfig& config) {
  validate_config(config);

  AnalysisReport report;
  report.tool_version = kVersion;
  report.config = config;

  GroupedDataset raw = load_manifest(config.manifest_path, config.input_format);

  // Requested comparisons must name groups that exist in the manifest.
  for (const auto& g : config.intragroup_groups)
    if (!raw.groups.count(g))
      throw Error("requested intragroup comparison names unknown group '" + g + "'");
  for (const auto& [a, b] : config.intergroup_pairs) {
    if (!raw.groups.count(a))
      throw Error("requested intergroup comparison names unknown group '" + a + "'");
    if (!raw.groups.count(b))
      throw Error("requested intergroup comparison names unknown group '" + b + "'");
  }

  // Filter + truncate, preserving manifest order.
  GroupedDataset processed;
  for (const auto& s : raw.series) {
    SeriesOutcome outcome;
    outcome.id = s.id;
    outcome.group = s.group.value_or("");
    outcome.original_length = s.values.size();

    TimeSeries working = s;
    if (config.filter.enabled) {
      FilterReport fr = adaptive_filter(s, config.filter.options);
      outcome.removed = fr.removed_count;
      outcome.replaced = fr.replaced_count;
      outcome.modified_fraction = fr.modified_fraction;
      outcome.accepted = fr.accepted;
      if (!fr.accepted) {
        outcome.note = "rejected by filter: modified fraction " +
                       format_double(fr.modified_fraction) + " exceeds threshold " +
                       format_double(config.filter.options.reject_threshold);
        outcome.analyzed_length = 0;
        report.series.push_back(std::move(outcome));
        continue;
      }
      working = std::move(fr.filtered);
    }
    if (config.series_length > 0 && working.values.size() > config.series_length) {
      working = truncated(working, config.series_length);
      outcome.note = "truncated from " + std::to_string(outcome.original_length) +
                     " to " + std::to_string(config.series_length) + " samples";
    } else if (config.series_length > 0 &&
               working.values.size() < config.series_length) {
      outcome.note = "kept at " + std::to_string(working.values.size()) +
                     " samples (below target length " +
                     std::to_string(config.series_length) + ")";
    }
    outcome.analyzed_length = working.values.size();
    report.series.push_back(std::move(outcome));
    processed.groups[working.group.value_or("")].push_back(working.id);
    processed.series.push_back(std::move(working));
  }

  if (processed.series.empty())
    throw Error("every series was rejected by the filter; see the report for reasons");

  // Expand the comparison selection against accepted groups.
  std::vector<std::string> eligible;
  for (const auto& [group, ids] : processed.groups)
    if (ids.size() >= 2) eligible.push_back(group);

  std::vector<std::string> intragroup = config.intragroup_groups;
  if (intragroup.empty()) {
    intragroup = eligible;
  } else {
    for (const auto& g : intragroup) {
      auto it = processed.groups.find(g);
      std::size_t n = it == processed.groups.end() ? 0 : it->second.size();
      if (n < 2)
        throw Error("group '" + g + "' needs >= 2 accepted members, has " +
                    std::to_string(n));
    }
  }
  std::vector<std::pair<std::string, std::string>> intergroup = config.intergroup_pairs;
  if (intergroup.empty()) {
    for (std::size_t i = 0; i < eligible.size(); ++i)
      for (std::size_t j = i + 1; j < eligible.size(); ++j)
        intergroup.emplace_back(eligible[i], eligible[j]);
  } else {
    for (const auto& [a, b] : intergroup) {
      for (const auto& g : {a, b}) {
        auto it = processed.groups.find(g);
        std::size_t n = it == processed.groups.end() ? 0 : it->second.size();
        if (n < 2)
          throw Error("group '" + g + "' needs >= 2 accepted members, has " +
                      std::to_string(n));
      }
    }
  }
  for (const auto& [group, ids] : processed.groups)
    if (ids.size() < 2)
      report.notes.push_back("group '" + group + "' has only " +
                             std::to_string(ids.size()) +
                             " accepted member(s); excluded from default comparisons");

  // Quantifier table: series x sweep cell x direction, one parallel batch.
  const SweepRange& sweep = config.sweep;
  const std::size_t n_cells = static_cast<std::size_t>(sweep.m_count()) *
                              static_cast<std::size_t>(sweep.tau_count());
  const std::size_t n_dirs = config.directions.size();
  const std::size_t n_series = processed.series.size();

  auto cell_of = [&](int m, int tau) {
    return static_cast<std::size_t>(m - sweep.m_min) *
               static_cast<std::size_t>(sweep.tau_count()) +
           static_cast<std::size_t>(tau - sweep.tau_min);
  };
  auto cell_params = [&](std::size_t cell) {
    return EmbeddingParams{
        sweep.m_min + static_cast<int>(cell / static_cast<std::size_t>(sweep.tau_count())),
        sweep.tau_min + static_cast<int>(cell % static_cast<std::size_t>(sweep.tau_count()))};
  };

  std::vector<QuantifierTriple> table(n_series * n_cells * n_dirs);
  std::vector<char> table_valid(n_series * n_cells * n_dirs, 0);
  auto slot = [&](std::size_t s, std::size_t c, std::size_t d) {
    return (s * n_cells + c) * n_dirs + d;
  };

  struct Job {
    std::uint32_t series, cell, dir;
  };
  std::vector<Job> jobs;
  jobs.reserve(n_series * n_cells * n_dirs);
  for (std::size_t s = 0; s < n_series; ++s) {
    for (std::size_t c = 0; c < n_cells; ++c) {
      if (!embedding_fits(cell_params(c), processed.series[s].values.size())) continue;
      for (std::size_t d = 0; d < n_dirs; ++d)
        jobs.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(c),
                        static_cast<std::uint32_t>(d)});
    }
  }
  parallel_for(jobs.size(), config.threads, [&](std::size_t k) {
    const Job& job = jobs[k];
    std::size_t idx = slot(job.series, job.cell, job.dir);
    table[idx] = quantify(processed.series[job.series], cell_params(job.cell),
                          config.directions[job.dir], config.gne_weighting);
    table_valid[idx] = 1;
  });

  report.quantifiers.reserve(jobs.size());
  for (std::size_t s = 0; s < n_series; ++s) {
    for (std::size_t c = 0; c < n_cells; ++c) {
      for (std::size_t d = 0; d < n_dirs; ++d) {
        std::size_t idx = slot(s, c, d);
        if (!table_valid[idx]) continue;
        QuantifierRow row;
        row.series_id = processed.series[s].id;
        row.group = processed.series[s].group.value_or("");
        row.m = table[idx].params.m;
        row.tau = table[idx].params.tau;
        row.direction = table[idx].direction;
        row.h_pe = table[idx].h_pe;
        row.h_cpe = table[idx].h_cpe;
        row.h_gne = table[idx].h_gne;
        report.quantifiers.push_back(std::move(row));
      }
    }
  }

  // Index helpers for grid assembly out of the table.
  auto series_index = [&](const std::string& id) {
    for (std::size_t s = 0; s < n_series; ++s)
      if (processed.series[s].id == id) return s;
    throw Error("internal: unknown series '" + id + "'");
  };
  auto dir_index = [&](Direction d) {
    for (std::size_t i = 0; i < config.directions.size(); ++i)
      if (config.directions[i] == d) return i;
    throw Error("internal: direction not configured");
  };
  auto group_samples = [&](const std::string& group, std::size_t cell, Direction d,
                           Statistic stat) {
    std::vector<double> out;
    const auto& ids = processed.groups.at(group);
    out.reserve(ids.size());
    std::size_t di = dir_index(d);
    for (const auto& id : ids) {
      std::size_t idx = slot(series_index(id), cell, di);
      if (!table_valid[idx]) throw Error("internal: sampling an invalid cell");
      out.push_back(table[idx].get(stat));
    }
    return out;
  };
  auto group_reason = [&](const std::string& group, int m, int tau) {
    std::vector<const TimeSeries*> members = processed.members(group);
    return unfit_note(members, m, tau);
  };

  // Intragroup forward-vs-reverse grids need both directions configured.
  bool both_dirs =
      has_direction(config, Direction::Forward) && has_direction(config, Direction::Reverse);
  if (!both_dirs && !intragroup.empty())
    report.notes.push_back(
        "intragroup forward-vs-reverse grids skipped: both directions must be "
        "configured");

  if (both_dirs) {
    for (const auto& group : intragroup) {
      for (Statistic stat : config.statistics) {
        PValueGrid proto;
        proto.comparison = ComparisonKind::IntragroupForwardReverse;
        proto.statistic = stat;
        proto.sweep = sweep;
        proto.groups = {group};
        GridOutput out;
        out.grid = detail::assemble_grid(
            proto, [&](int m, int tau, std::string* reason)
                       -> std::optional<std::pair<std::vector<double>, std::vector<double>>> {
              std::string why = group_reason(group, m, tau);
              if (!why.empty()) {
                *reason = why;
                return std::nullopt;
              }
              std::size_t cell = cell_of(m, tau);
              return std::make_pair(group_samples(group, cell, Direction::Forward, stat),
                                    group_samples(group, cell, Direction::Reverse, stat));
            });
        report.grids.push_back(std::move(out));
      }
    }
  }

  for (const auto& [a, b] : intergroup) {
    for (Direction d : config.directions) {
      for (Statistic stat : config.statistics) {
        PValueGrid proto;
        proto.comparison = ComparisonKind::Intergroup;
        proto.statistic = stat;
        proto.sweep = sweep;
        proto.groups = {a, b};
        proto.direction = d;
        GridOutput out;
        out.grid = detail::assemble_grid(
            proto, [&, a = a, b = b](int m, int tau, std::string* reason)
                       -> std::optional<std::pair<std::vector<double>, std::vector<double>>> {
              std::string why = group_reason(a, m, tau);
              if (why.empty()) why = group_reason(b, m, tau);
              if (!why.empty()) {
                *reason = why;
                return std::nullopt;
              }
              std::size_t cell = cell_of(m, tau);
              return std::make_pair(group_samples(a, cell, d, stat),
                                    group_samples(b, cell, d, stat));
            });
        report.grids.push_back(std::move(out));
      }
    }
  }

  // Surrogate comparison grids (opt-in; they dominate runtime).
  for (SurrogateAlgorithm alg : config.surrogates.algorithms) {
    for (const auto& group : intragroup) {
      auto grids = surrogate_comparison_grids(
          processed, group, alg, sweep, config.statistics, config.surrogates.count,
          config.surrogates.mode, config.seed, config.gne_weighting, config.threads);
      for (auto& g : grids) {
        GridOutput out;
        out.grid = std::move(g);
        report.grids.push_back(std::move(out));
      }
    }
  }

  return report;
}

std::string quantifier_csv(const std::vector<QuantifierRow>& rows) {
  std::ostringstream out;
  out << "series_id,group,m,tau,direction,h_pe,h_cpe,h_gne\n";
  for (const auto& r : rows) {
    out << r.series_id << ',' << r.group << ',' << r.m << ',' << r.tau << ','
        << to_string(r.direction) << ',' << format_double(r.h_pe) << ','
        << format_double(r.h_cpe) << ',' << format_double(r.h_gne) << '\n';
  }
  return out.str();
}

void write_outputs(AnalysisReport& report) {
  const auto& dir = report.config.output_dir;
  if (dir.empty()) throw Error("no output directory configured");
  std::filesystem::create_directories(dir);
  std::filesystem::create_directories(dir / "grids");

  {
    std::ofstream out(dir / "quantifiers.csv");
    if (!out) throw Error("cannot write '" + (dir / "quantifiers.csv").string() + "'");
    out << quantifier_csv(report.quantifiers);
    report.quantifier_csv_path = "quantifiers.csv";
  }

  std::set<std::string> used;
  for (auto& g : report.grids) {
    std::string base = g.grid.label();
    std::string name = base;
    int suffix = 1;
    while (!used.insert(name).second) name = base + "_" + std::to_string(++suffix);
    g.csv_path = "grids/" + name + ".csv";
    write_grid_csv(g.grid, dir / g.csv_path);
    if (report.config.emit_plots) {
      g.plot_path = "grids/" + name + ".svg";
      write_grid_svg(g.grid, dir / g.plot_path);
    }
  }

  std::ofstream out(dir / "report.json");
  if (!out) throw Error("cannot write '" + (dir / "report.json").string() + "'");
  out << report_json(report);
}

int LorenzDemoResult::rejection_count(SurrogateAlgorithm algorithm,
                                      Statistic statistic) const {
  int count = 0;
  for (const auto& o : outcomes)
    if (o.algorithm == algorithm && o.statistic == statistic && o.result.rejected)
      ++count;
  return count;
}

LorenzDemoResult run_lorenz_demo(const LorenzDemoConfig& config) {
  if (config.series_count < 1) throw Error("lorenz demo needs >= 1 series");
  if (config.surrogate_count < 1) throw Error("surrogate count must be >= 1");
  if (config.algorithms.empty()) throw Error("no surrogate algorithms configured");
  if (config.statistics.empty()) throw Error("no statistics configured");

  LorenzDemoResult result;
  result.config = config;
  LorenzParams params = config.params;
  params.seed = config.seed;
  result.peak_series = make_lorenz_peak_ensemble(params, config.series_count,
                                                 config.peaks_per_series,
                                                 config.threads);

  // One ensemble per (series, algorithm); its quantifier triples are shared
  // by all statistics so each surrogate is evaluated once.
  for (const auto& series : result.peak_series) {
    QuantifierTriple original = quantify(series, config.embedding,
                                         Direction::Forward, config.gne_weighting);
    for (SurrogateAlgorithm alg : config.algorithms) {
      std::uint64_t ensemble_seed = derive_seed(
          config.seed, std::string("lorenz-surrogate:") + to_string(alg) + ":" +
                           series.id);
      SurrogateEnsemble ensemble = generate_ensemble(
          series, alg, config.surrogate_count, ensemble_seed, config.threads);
      std::vector<QuantifierTriple> member_triples(ensemble.members.size());
      parallel_for(ensemble.members.size(), config.threads, [&](std::size_t j) {
        member_triples[j] = quantify(ensemble.members[j], config.embedding,
                                     Direction::Forward, config.gne_weighting);
      });
      for (Statistic stat : config.statistics) {
        std::vector<double> q_surr(member_triples.size());
        for (std::size_t j = 0; j < member_triples.size(); ++j)
          q_surr[j] = member_triples[j].get(stat);
        LorenzBatteryOutcome outcome;
        outcome.series_id = series.id;
        outcome.algorithm = alg;
        outcome.statistic = stat;
        outcome.result = rank_order_test(original.get(stat), q_surr);
        result.outcomes.push_back(std::move(outcome));
      }
    }
  }
  return result;
}

}  // namespace opnet
