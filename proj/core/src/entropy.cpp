#include "opnet/entropy.hpp"

#include <cmath>
#include <unordered_map>

#include "opnet/error.hpp"

namespace opnet {

const char* to_string(Statistic s) {
  switch (s) {
    case Statistic::PermutationEntropy: return "h_pe";
    case Statistic::ConditionalEntropy: return "h_cpe";
    case Statistic::GlobalNodeEntropy: return "h_gne";
  }
  throw Error("unhandled statistic");
}

Statistic statistic_from_string(const std::string& name) {
  if (name == "h_pe") return Statistic::PermutationEntropy;
  if (name == "h_cpe") return Statistic::ConditionalEntropy;
  if (name == "h_gne") return Statistic::GlobalNodeEntropy;
  throw Error("unknown statistic '" + name + "' (expected h_pe|h_cpe|h_gne)");
}

double permutation_entropy(const PatternSequence& sequence) {
  if (sequence.codes.empty()) throw Error("empty pattern sequence");
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  counts.reserve(sequence.codes.size());
  for (std::uint64_t code : sequence.codes) ++counts[code];

  const double n = static_cast<double>(sequence.codes.size());
  double h = 0.0;
  for (const auto& [code, count] : counts) {
    (void)code;
    double p = static_cast<double>(count) / n;
    h -= p * std::log(p);
  }
  return h;
}

double conditional_entropy(const OrdinalNetwork& network) {
  // Weighted mean of transition-row entropies; a terminal pattern (the
  // last symbol, when it never recurs) has no row and contributes only
  // through its pattern frequency weight times a zero row entropy -- but
  // per definition weights use pattern frequencies over all symbols, so
  // normalize by symbol_total.
  const double n = static_cast<double>(network.symbol_total);
  double h = 0.0;
  for (std::size_t i = 0; i < network.node_count(); ++i) {
    double row_total = 0.0;
    for (const auto& [target, weight] : network.edges[i]) {
      (void)target;
      row_total += static_cast<double>(weight);
    }
    if (row_total == 0.0) continue;
    double row_entropy = 0.0;
    for (const auto& [target, weight] : network.edges[i]) {
      (void)target;
      double p = static_cast<double>(weight) / row_total;
      row_entropy -= p * std::log(p);
    }
    double weight_i = static_cast<double>(network.symbol_counts[i]) / n;
    h += weight_i * row_entropy;
  }
  return h;
}

double global_node_entropy(const OrdinalNetwork& network, GneWeighting weighting) {
  // Self-loops are removed before computing local node entropies. Node
  // weights are out-strengths: with ExcludeSelfLoops the self-loop weight
  // is dropped from the numerator and the normalization, so nodes left
  // without out-edges get zero weight automatically.
  const std::size_t n_nodes = network.node_count();
  std::vector<double> local(n_nodes, 0.0);
  std::vector<double> strength(n_nodes, 0.0);
  double strength_total = 0.0;

  for (std::size_t i = 0; i < n_nodes; ++i) {
    double row_total = 0.0;
    double full_total = 0.0;
    for (const auto& [target, weight] : network.edges[i]) {
      full_total += static_cast<double>(weight);
      if (target != i) row_total += static_cast<double>(weight);
    }
    if (row_total > 0.0) {
      double h = 0.0;
      for (const auto& [target, weight] : network.edges[i]) {
        if (target == i) continue;
        double p = static_cast<double>(weight) / row_total;
        h -= p * std::log(p);
      }
      local[i] = h;
    }
    strength[i] =
        weighting == GneWeighting::ExcludeSelfLoops ? row_total : full_total;
    strength_total += strength[i];
  }

  if (strength_total == 0.0) return 0.0;
  double h = 0.0;
  for (std::size_t i = 0; i < n_nodes; ++i)
    h += (strength[i] / strength_total) * local[i];
  return h;
}

double QuantifierTriple::get(Statistic s) const {
  switch (s) {
    case Statistic::PermutationEntropy: return h_pe;
    case Statistic::ConditionalEntropy: return h_cpe;
    case Statistic::GlobalNodeEntropy: return h_gne;
  }
  throw Error("unhandled statistic");
}

QuantifierTriple quantify(const TimeSeries& series, EmbeddingParams params,
                          Direction direction, GneWeighting weighting) {
  PatternSequence seq = extract_patterns(series, params, direction);
  OrdinalNetwork net = build_network(seq);
  QuantifierTriple q;
  q.series_id = series.id;
  q.params = params;
  q.direction = direction;
  q.h_pe = permutation_entropy(seq);
  q.h_cpe = conditional_entropy(net);
  q.h_gne = global_node_entropy(net, weighting);
  return q;
}

}  // namespace opnet
