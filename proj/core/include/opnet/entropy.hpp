#pragma once

#include <string>

#include "opnet/network.hpp"
#include "opnet/ordinal.hpp"

namespace opnet {

// The three ordinal quantifiers. CSV/CLI names: h_pe, h_cpe, h_gne.
enum class Statistic { PermutationEntropy, ConditionalEntropy, GlobalNodeEntropy };

const char* to_string(Statistic s);
Statistic statistic_from_string(const std::string& name);

// Node weighting for global node entropy: whether self-loop weight counts
// toward a node's share of the stationary distribution. Local node entropy
// always excludes self-loops either way.
enum class GneWeighting { ExcludeSelfLoops, IncludeSelfLoops };

// Shannon entropy (natural log) of the pattern frequencies over the whole
// symbol sequence. Range [0, ln(min(n, m!))].
double permutation_entropy(const PatternSequence& sequence);

// Weighted mean of row entropies of the transition matrix, rows normalized
// over observed out-edges (self-loops included), weights = pattern
// frequencies of the source node.
double conditional_entropy(const OrdinalNetwork& network);

// Mean local node entropy after self-loop removal. Rows with no remaining
// out-edges contribute nothing and are excluded from the weight
// normalization (they get zero weight under ExcludeSelfLoops
// automatically; under IncludeSelfLoops their residual weight backs a zero
// row entropy).
double global_node_entropy(const OrdinalNetwork& network,
                           GneWeighting weighting = GneWeighting::ExcludeSelfLoops);

// All three quantifiers of one series under one embedding and direction.
struct QuantifierTriple {
  std::string series_id;
  EmbeddingParams params;
  Direction direction = Direction::Forward;
  double h_pe = 0.0;
  double h_cpe = 0.0;
  double h_gne = 0.0;

  double get(Statistic s) const;
};

QuantifierTriple quantify(const TimeSeries& series, EmbeddingParams params,
                          Direction direction = Direction::Forward,
                          GneWeighting weighting = GneWeighting::ExcludeSelfLoops);

}  // namespace opnet
