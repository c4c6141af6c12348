#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "opnet/ordinal.hpp"

namespace opnet {

// Weighted directed graph of ordinal pattern transitions. Nodes are the
// patterns observed in the sequence (never the full m! alphabet); storage
// is sparse adjacency lists. Self-loops are ordinary edges.
struct OrdinalNetwork {
  EmbeddingParams params;
  Direction direction = Direction::Forward;

  std::vector<std::uint64_t> node_codes;     // first-appearance order
  std::vector<std::uint64_t> symbol_counts;  // occurrences of each pattern
  // edges[i]: (target node index, transition count), sorted by target.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> edges;

  std::uint64_t symbol_total = 0;  // == pattern sequence length
  std::uint64_t edge_total = 0;    // == sequence length - 1

  std::size_t node_count() const { return node_codes.size(); }
  std::optional<std::uint32_t> node_index(std::uint64_t code) const;
  std::uint64_t out_weight(std::uint32_t node) const;
  std::uint64_t edge_weight(std::uint32_t from, std::uint32_t to) const;
};

// Counts consecutive transitions of the symbol sequence (stride 1).
// Requires at least two symbols (one transition).
OrdinalNetwork build_network(const PatternSequence& sequence);

// Debug aid: "from,to,weight" rows (pattern codes), storage order.
std::string edge_list_csv(const OrdinalNetwork& network);

}  // namespace opnet
