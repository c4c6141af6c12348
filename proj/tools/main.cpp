// opnet: ordinal-network time series analysis CLI.
//
// Subcommands:
//   analyze      batch pipeline: manifest -> filter -> quantifier sweep ->
//                Mann-Whitney p-value grids -> CSV/JSON reports
//   lorenz-demo  Lorenz x-peak ensemble vs surrogate ensembles
//   filter       run the artifact filter on one series
//   surrogate    single-series surrogate battery

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "opnet/entropy.hpp"
#include "opnet/error.hpp"
#include "opnet/filter.hpp"
#include "opnet/io.hpp"
#include "opnet/pipeline.hpp"
#include "opnet/surrogate.hpp"
#include "opnet/version.hpp"

namespace {

using nlohmann::ordered_json;

opnet::SeriesFormat parse_format(const std::string& name) {
  if (name == "plain") return opnet::SeriesFormat::Plain;
  if (name == "csv") return opnet::SeriesFormat::Csv;
  throw opnet::Error("unknown input format '" + name + "' (expected plain|csv)");
}

std::vector<opnet::SurrogateAlgorithm> parse_algorithms(
    const std::vector<std::string>& names) {
  std::vector<opnet::SurrogateAlgorithm> algs;
  for (const auto& name : names) {
    if (name == "all") {
      return {opnet::SurrogateAlgorithm::Shuffle,
              opnet::SurrogateAlgorithm::PhaseRandomized,
              opnet::SurrogateAlgorithm::Aaft};
    }
    algs.push_back(opnet::surrogate_algorithm_from_string(name));
  }
  return algs;
}

std::vector<opnet::Statistic> parse_statistics(const std::vector<std::string>& names) {
  std::vector<opnet::Statistic> stats;
  for (const auto& name : names) stats.push_back(opnet::statistic_from_string(name));
  return stats;
}

ordered_json filter_report_json(const opnet::FilterReport& report,
                                const opnet::FilterOptions& options) {
  ordered_json j;
  j["series_id"] = report.filtered.id;
  j["original_length"] = report.original_length;
  j["filtered_length"] = report.filtered.values.size();
  j["removed"] = report.removed_count;
  j["replaced"] = report.replaced_count;
  j["modified_fraction"] = report.modified_fraction;
  j["accepted"] = report.accepted;
  j["options"] = {{"lower_bound", options.lower_bound},
                  {"upper_bound", options.upper_bound},
                  {"jump_fraction", options.jump_fraction},
                  {"window", options.window},
                  {"reject_threshold", options.reject_threshold}};
  return j;
}

struct FilterFlags {
  opnet::FilterOptions options;

  void attach(CLI::App* cmd) {
    cmd->add_option("--filter-lower", options.lower_bound,
                    "Reject values below this bound (ms)")
        ->capture_default_str();
    cmd->add_option("--filter-upper", options.upper_bound,
                    "Reject values above this bound (ms)")
        ->capture_default_str();
    cmd->add_option("--filter-jump", options.jump_fraction,
                    "Relative deviation from both neighbours that marks an artifact")
        ->capture_default_str();
    cmd->add_option("--filter-window", options.window,
                    "Running-mean window used for replacements")
        ->capture_default_str();
    cmd->add_option("--filter-reject-threshold", options.reject_threshold,
                    "Reject a series once this fraction of samples was modified")
        ->capture_default_str();
  }
};

int cmd_analyze(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "analyze", "Run the batch pipeline over a manifest of series files");
  cmd->set_config("--config", "", "INI config file (flags override it)");

  auto config = std::make_shared<opnet::RunConfig>();
  auto state = std::make_shared<std::tuple<std::string, std::vector<std::string>,
                                           std::vector<std::string>, FilterFlags,
                                           std::vector<std::string>, std::string,
                                           std::vector<std::string>,
                                           std::vector<std::string>, std::string,
                                           bool>>();
  auto& [format, directions, statistics, filter_flags, surrogate_algs,
         surrogate_mode, intragroup, intergroup, gne, no_filter] = *state;
  format = "plain";
  surrogate_mode = "subject_means";
  gne = "exclude";
  no_filter = false;

  cmd->add_option("--manifest", config->manifest_path,
                  "Manifest CSV (header id,group; paths relative to it)")
      ->required();
  cmd->add_option("--format", format, "Series file format: plain|csv")
      ->capture_default_str();
  cmd->add_option("--out", config->output_dir, "Output directory")->required();
  cmd->add_option("--m-min", config->sweep.m_min, "Smallest embedding dimension")
      ->capture_default_str();
  cmd->add_option("--m-max", config->sweep.m_max, "Largest embedding dimension")
      ->capture_default_str();
  cmd->add_option("--tau-min", config->sweep.tau_min, "Smallest embedding delay")
      ->capture_default_str();
  cmd->add_option("--tau-max", config->sweep.tau_max, "Largest embedding delay")
      ->capture_default_str();
  cmd->add_option("--directions", directions,
                  "Mapping directions (forward,reverse)")
      ->delimiter(',');
  cmd->add_option("--statistics", statistics, "Quantifiers (h_pe,h_cpe,h_gne)")
      ->delimiter(',');
  cmd->add_option("--series-length", config->series_length,
                  "Truncate accepted series to this length (0 keeps all samples)")
      ->capture_default_str();
  cmd->add_flag("--no-filter", no_filter, "Skip the artifact filter");
  filter_flags.attach(cmd);
  cmd->add_option("--surrogate-alg", surrogate_algs,
                  "Surrogate algorithms for original-vs-surrogate grids "
                  "(alg0|alg1|alg2|all, repeatable; off by default)")
      ->delimiter(',');
  cmd->add_option("--n-surrogates", config->surrogates.count,
                  "Surrogates per series in surrogate grids")
      ->capture_default_str();
  cmd->add_option("--surrogate-mode", surrogate_mode,
                  "Surrogate sample: subject_means|pooled")
      ->capture_default_str();
  cmd->add_option("--intragroup", intragroup,
                  "Group for forward-vs-reverse grids (repeatable; default all)");
  cmd->add_option("--intergroup", intergroup,
                  "Group pair A:B for intergroup grids (repeatable; default all "
                  "pairs)");
  cmd->add_option("--gne-self-loops", gne,
                  "Node weighting for h_gne: exclude|include self-loop weight")
      ->capture_default_str();
  cmd->add_option("--seed", config->seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", config->threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  cmd->add_flag("--plot", config->emit_plots, "Emit an SVG per grid");

  cmd->callback([config, state] {
    auto& [format, directions, statistics, filter_flags, surrogate_algs,
           surrogate_mode, intragroup, intergroup, gne, no_filter] = *state;
    config->input_format = parse_format(format);
    if (!directions.empty()) {
      config->directions.clear();
      for (const auto& d : directions)
        config->directions.push_back(opnet::direction_from_string(d));
    }
    if (!statistics.empty()) config->statistics = parse_statistics(statistics);
    config->filter.enabled = !no_filter;
    config->filter.options = filter_flags.options;
    config->surrogates.algorithms = parse_algorithms(surrogate_algs);
    config->surrogates.mode = opnet::surrogate_mode_from_string(surrogate_mode);
    config->intragroup_groups = intragroup;
    for (const auto& pair : intergroup) {
      auto colon = pair.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == pair.size())
        throw opnet::Error("--intergroup expects A:B, got '" + pair + "'");
      config->intergroup_pairs.emplace_back(pair.substr(0, colon),
                                            pair.substr(colon + 1));
    }
    if (gne == "exclude")
      config->gne_weighting = opnet::GneWeighting::ExcludeSelfLoops;
    else if (gne == "include")
      config->gne_weighting = opnet::GneWeighting::IncludeSelfLoops;
    else
      throw opnet::Error("--gne-self-loops expects exclude|include");

    if (!config->surrogates.algorithms.empty() && config->surrogates.count < 39)
      std::cerr << "warning: " << config->surrogates.count
                << " surrogates cannot resolve a two-sided 0.05 rank test "
                   "(minimum 39)\n";

    opnet::AnalysisReport report = opnet::run_pipeline(*config);
    opnet::write_outputs(report);
    std::cout << "wrote " << (config->output_dir / "report.json").string() << " ("
              << report.quantifiers.size() << " quantifier rows, "
              << report.grids.size() << " grids)\n";
  });
  return 0;
}

int cmd_lorenz_demo(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "lorenz-demo", "Lorenz x-peak ensemble tested against surrogate ensembles");

  auto config = std::make_shared<opnet::LorenzDemoConfig>();
  auto algs = std::make_shared<std::vector<std::string>>();
  auto stats = std::make_shared<std::vector<std::string>>();

  cmd->add_option("--out", config->output_dir, "Output directory")->required();
  cmd->add_option("--n-series", config->series_count, "Ensemble size")
      ->capture_default_str();
  cmd->add_option("--n-peaks", config->peaks_per_series, "Peaks per series")
      ->capture_default_str();
  cmd->add_option("--m", config->embedding.m, "Embedding dimension")
      ->capture_default_str();
  cmd->add_option("--tau", config->embedding.tau, "Embedding delay")
      ->capture_default_str();
  cmd->add_option("--sigma", config->params.sigma, "Lorenz sigma")
      ->capture_default_str();
  cmd->add_option("--rho", config->params.rho, "Lorenz rho")->capture_default_str();
  cmd->add_option("--beta", config->params.beta, "Lorenz beta")
      ->capture_default_str();
  cmd->add_option("--dt", config->params.dt, "Integration step")
      ->capture_default_str();
  cmd->add_option("--transient", config->params.n_transient,
                  "Discarded transient steps")
      ->capture_default_str();
  cmd->add_option("--n-surrogates", config->surrogate_count, "Surrogates per series")
      ->capture_default_str();
  cmd->add_option("--alg", *algs, "Surrogate algorithms (alg0|alg1|alg2|all)")
      ->delimiter(',');
  cmd->add_option("--statistics", *stats, "Quantifiers (h_pe,h_cpe,h_gne)")
      ->delimiter(',');
  cmd->add_option("--seed", config->seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", config->threads, "Worker threads (0 = auto)")
      ->capture_default_str();

  cmd->callback([config, algs, stats] {
    if (!algs->empty()) config->algorithms = parse_algorithms(*algs);
    if (!stats->empty()) config->statistics = parse_statistics(*stats);
    if (config->surrogate_count < 39)
      std::cerr << "warning: " << config->surrogate_count
                << " surrogates cannot resolve a two-sided 0.05 rank test "
                   "(minimum 39)\n";
    opnet::LorenzDemoResult result = opnet::run_lorenz_demo(*config);
    opnet::write_lorenz_outputs(result);
    for (opnet::SurrogateAlgorithm alg : result.config.algorithms)
      for (opnet::Statistic stat : result.config.statistics)
        std::cout << to_string(alg) << " " << to_string(stat) << ": rejected "
                  << result.rejection_count(alg, stat) << "/"
                  << result.config.series_count << "\n";
    std::cout << "wrote " << (config->output_dir / "lorenz_demo.json").string()
              << "\n";
  });
  return 0;
}

int cmd_filter(CLI::App& app) {
  auto* cmd = app.add_subcommand("filter", "Run the artifact filter on one series");
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto format = std::make_shared<std::string>("plain");
  auto flags = std::make_shared<FilterFlags>();

  cmd->add_option("--input", *input, "Series file")->required();
  cmd->add_option("--format", *format, "Series file format: plain|csv")
      ->capture_default_str();
  cmd->add_option("--output", *output, "Write the filtered series here");
  flags->attach(cmd);

  cmd->callback([input, output, format, flags] {
    opnet::TimeSeries series = opnet::load_series(*input, parse_format(*format));
    opnet::FilterReport report = opnet::adaptive_filter(series, flags->options);
    if (!output->empty()) opnet::save_series(report.filtered, *output);
    std::cout << filter_report_json(report, flags->options).dump(2) << "\n";
  });
  return 0;
}

int cmd_surrogate(CLI::App& app) {
  auto* cmd =
      app.add_subcommand("surrogate", "Single-series surrogate battery");
  auto input = std::make_shared<std::string>();
  auto format = std::make_shared<std::string>("plain");
  auto alg = std::make_shared<std::string>("alg0");
  auto stat = std::make_shared<std::string>("h_pe");
  auto params = std::make_shared<opnet::EmbeddingParams>();
  auto count = std::make_shared<int>(100);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto threads = std::make_shared<int>(0);

  cmd->add_option("--input", *input, "Series file")->required();
  cmd->add_option("--format", *format, "Series file format: plain|csv")
      ->capture_default_str();
  cmd->add_option("--m", params->m, "Embedding dimension")->capture_default_str();
  cmd->add_option("--tau", params->tau, "Embedding delay")->capture_default_str();
  cmd->add_option("--alg", *alg, "Surrogate algorithm: alg0|alg1|alg2")
      ->capture_default_str();
  cmd->add_option("--statistic", *stat, "Quantifier: h_pe|h_cpe|h_gne")
      ->capture_default_str();
  cmd->add_option("--n-surrogates", *count, "Ensemble size")->capture_default_str();
  cmd->add_option("--seed", *seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", *threads, "Worker threads (0 = auto)")
      ->capture_default_str();

  cmd->callback([input, format, alg, stat, params, count, seed, threads] {
    if (*count < 39)
      std::cerr << "warning: " << *count
                << " surrogates cannot resolve a two-sided 0.05 rank test "
                   "(minimum 39)\n";
    opnet::TimeSeries series = opnet::load_series(*input, parse_format(*format));
    opnet::SurrogateTestResult result = opnet::run_surrogate_battery(
        series, *params, opnet::statistic_from_string(*stat),
        opnet::surrogate_algorithm_from_string(*alg), *count, *seed,
        opnet::GneWeighting::ExcludeSelfLoops, *threads);
    ordered_json j;
    j["series_id"] = series.id;
    j["algorithm"] = *alg;
    j["statistic"] = *stat;
    j["m"] = params->m;
    j["tau"] = params->tau;
    j["n_surrogates"] = *count;
    j["seed"] = *seed;
    j["q_original"] = result.q_original;
    j["rank"] = result.rank;
    j["rejected"] = result.rejected;
    j["alpha"] = result.alpha_defined ? ordered_json(result.alpha)
                                      : ordered_json(nullptr);
    std::cout << j.dump(2) << "\n";
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordinal-network time series analysis"};
  app.set_version_flag("--version", opnet::kVersion);
  app.require_subcommand(1);

  cmd_analyze(app);
  cmd_lorenz_demo(app);
  cmd_filter(app);
  cmd_surrogate(app);

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
