#include <fstream>

#include "json.hpp"
#include "opnet/error.hpp"
#include "opnet/io.hpp"
#include "opnet/pipeline.hpp"
#include "opnet/version.hpp"

namespace opnet {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const char* to_string(GneWeighting w) {
  return w == GneWeighting::ExcludeSelfLoops ? "exclude_self_loops"
                                             : "include_self_loops";
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["manifest"] = c.manifest_path.string();
  j["input_format"] = c.input_format == SeriesFormat::Plain ? "plain" : "csv";
  j["output_dir"] = c.output_dir.string();
  j["sweep"] = {{"m_min", c.sweep.m_min},
                {"m_max", c.sweep.m_max},
                {"tau_min", c.sweep.tau_min},
                {"tau_max", c.sweep.tau_max}};
  j["directions"] = ordered_json::array();
  for (Direction d : c.directions) j["directions"].push_back(to_string(d));
  j["statistics"] = ordered_json::array();
  for (Statistic s : c.statistics) j["statistics"].push_back(to_string(s));
  j["series_length"] = c.series_length;
  j["filter"] = {{"enabled", c.filter.enabled},
                 {"lower_bound", c.filter.options.lower_bound},
                 {"upper_bound", c.filter.options.upper_bound},
                 {"jump_fraction", c.filter.options.jump_fraction},
                 {"window", c.filter.options.window},
                 {"reject_threshold", c.filter.options.reject_threshold}};
  ordered_json algs = ordered_json::array();
  for (SurrogateAlgorithm a : c.surrogates.algorithms) algs.push_back(to_string(a));
  j["surrogates"] = {{"algorithms", algs},
                     {"count", c.surrogates.count},
                     {"mode", to_string(c.surrogates.mode)}};
  j["intragroup_groups"] = c.intragroup_groups;
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : c.intergroup_pairs)
    pairs.push_back(ordered_json::array({a, b}));
  j["intergroup_pairs"] = pairs;
  j["gne_weighting"] = to_string(c.gne_weighting);
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["emit_plots"] = c.emit_plots;
  return j;
}

ordered_json grid_json(const GridOutput& g) {
  ordered_json j;
  j["comparison"] = to_string(g.grid.comparison);
  j["statistic"] = to_string(g.grid.statistic);
  j["groups"] = g.grid.groups;
  j["direction"] = g.grid.direction ? ordered_json(to_string(*g.grid.direction))
                                    : ordered_json(nullptr);
  j["algorithm"] = g.grid.algorithm ? ordered_json(to_string(*g.grid.algorithm))
                                    : ordered_json(nullptr);
  j["mode"] = g.grid.mode ? ordered_json(to_string(*g.grid.mode))
                          : ordered_json(nullptr);
  j["csv"] = g.csv_path.empty() ? ordered_json(nullptr) : ordered_json(g.csv_path);
  j["plot"] = g.plot_path.empty() ? ordered_json(nullptr) : ordered_json(g.plot_path);
  ordered_json cells = ordered_json::array();
  for (const auto& c : g.grid.cells) {
    ordered_json cj;
    cj["m"] = c.m;
    cj["tau"] = c.tau;
    cj["p_value"] = c.p_value ? ordered_json(*c.p_value) : ordered_json(nullptr);
    cj["reason"] = c.invalid_reason.empty() ? ordered_json(nullptr)
                                            : ordered_json(c.invalid_reason);
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

}  // namespace

std::string report_json(const AnalysisReport& report) {
  ordered_json j;
  j["schema_version"] = 1;
  j["tool"] = {{"name", "opnet"}, {"version", report.tool_version}};
  j["seed"] = report.config.seed;
  j["config"] = config_json(report.config);

  ordered_json series = ordered_json::array();
  for (const auto& s : report.series) {
    ordered_json sj;
    sj["id"] = s.id;
    sj["group"] = s.group;
    sj["original_length"] = s.original_length;
    sj["analyzed_length"] = s.analyzed_length;
    sj["removed"] = s.removed;
    sj["replaced"] = s.replaced;
    sj["modified_fraction"] = s.modified_fraction;
    sj["accepted"] = s.accepted;
    sj["note"] = s.note.empty() ? ordered_json(nullptr) : ordered_json(s.note);
    series.push_back(std::move(sj));
  }
  j["series"] = std::move(series);

  j["quantifier_rows"] = report.quantifiers.size();
  j["quantifier_csv"] = report.quantifier_csv_path.empty()
                            ? ordered_json(nullptr)
                            : ordered_json(report.quantifier_csv_path);

  ordered_json grids = ordered_json::array();
  for (const auto& g : report.grids) grids.push_back(grid_json(g));
  j["grids"] = std::move(grids);
  j["notes"] = report.notes;

  return j.dump(2) + "\n";
}

void write_lorenz_outputs(const LorenzDemoResult& result) {
  const auto& dir = result.config.output_dir;
  if (dir.empty()) throw Error("no output directory configured");
  std::filesystem::create_directories(dir / "peaks");

  for (const auto& series : result.peak_series)
    save_series(series, dir / "peaks" / (series.id + ".txt"));

  ordered_json j;
  j["schema_version"] = 1;
  j["tool"] = {{"name", "opnet"}, {"version", kVersion}};
  j["seed"] = result.config.seed;
  j["params"] = {{"sigma", result.config.params.sigma},
                 {"rho", result.config.params.rho},
                 {"beta", result.config.params.beta},
                 {"dt", result.config.params.dt},
                 {"n_transient", result.config.params.n_transient}};
  j["embedding"] = {{"m", result.config.embedding.m},
                    {"tau", result.config.embedding.tau}};
  j["series_count"] = result.config.series_count;
  j["peaks_per_series"] = result.config.peaks_per_series;
  j["surrogate_count"] = result.config.surrogate_count;

  ordered_json outcomes = ordered_json::array();
  for (const auto& o : result.outcomes) {
    ordered_json oj;
    oj["series_id"] = o.series_id;
    oj["algorithm"] = to_string(o.algorithm);
    oj["statistic"] = to_string(o.statistic);
    oj["q_original"] = o.result.q_original;
    oj["rank"] = o.result.rank;
    oj["rejected"] = o.result.rejected;
    oj["alpha"] = o.result.alpha_defined ? ordered_json(o.result.alpha)
                                         : ordered_json(nullptr);
    outcomes.push_back(std::move(oj));
  }
  j["outcomes"] = std::move(outcomes);

  ordered_json table = ordered_json::array();
  for (SurrogateAlgorithm alg : result.config.algorithms) {
    for (Statistic stat : result.config.statistics) {
      table.push_back({{"algorithm", to_string(alg)},
                       {"statistic", to_string(stat)},
                       {"rejections", result.rejection_count(alg, stat)},
                       {"series", result.config.series_count}});
    }
  }
  j["rejection_table"] = std::move(table);

  std::ofstream out(dir / "lorenz_demo.json");
  if (!out) throw Error("cannot write '" + (dir / "lorenz_demo.json").string() + "'");
  out << j.dump(2) << "\n";
}

}  // namespace opnet
