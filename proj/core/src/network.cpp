#include "opnet/network.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "opnet/error.hpp"

namespace opnet {

std::optional<std::uint32_t> OrdinalNetwork::node_index(std::uint64_t code) const {
  for (std::uint32_t i = 0; i < node_codes.size(); ++i)
    if (node_codes[i] == code) return i;
  return std::nullopt;
}

std::uint64_t OrdinalNetwork::out_weight(std::uint32_t node) const {
  std::uint64_t sum = 0;
  for (const auto& [target, weight] : edges.at(node)) {
    (void)target;
    sum += weight;
  }
  return sum;
}

std::uint64_t OrdinalNetwork::edge_weight(std::uint32_t from, std::uint32_t to) const {
  for (const auto& [target, weight] : edges.at(from))
    if (target == to) return weight;
  return 0;
}

OrdinalNetwork build_network(const PatternSequence& sequence) {
  if (sequence.codes.size() < 2)
    throw Error("transition network needs at least 2 symbols, got " +
                std::to_string(sequence.codes.size()));

  OrdinalNetwork net;
  net.params = sequence.params;
  net.direction = sequence.direction;
  net.symbol_total = sequence.codes.size();
  net.edge_total = sequence.codes.size() - 1;

  // Sparse accumulation: nodes indexed in first-appearance order, row
  // counts in per-source hash maps, sorted once at the end.
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  index.reserve(sequence.codes.size());
  std::vector<std::unordered_map<std::uint32_t, std::uint64_t>> rows;

  auto node_of = [&](std::uint64_t code) -> std::uint32_t {
    auto [it, inserted] = index.try_emplace(code, static_cast<std::uint32_t>(net.node_codes.size()));
    if (inserted) {
      net.node_codes.push_back(code);
      net.symbol_counts.push_back(0);
      rows.emplace_back();
    }
    return it->second;
  };

  std::uint32_t prev = node_of(sequence.codes[0]);
  ++net.symbol_counts[prev];
  for (std::size_t i = 1; i < sequence.codes.size(); ++i) {
    std::uint32_t cur = node_of(sequence.codes[i]);
    ++net.symbol_counts[cur];
    ++rows[prev][cur];
    prev = cur;
  }

  net.edges.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    net.edges[i].assign(rows[i].begin(), rows[i].end());
    std::sort(net.edges[i].begin(), net.edges[i].end());
  }
  return net;
}

std::string edge_list_csv(const OrdinalNetwork& network) {
  std::ostringstream out;
  out << "from,to,weight\n";
  for (std::size_t i = 0; i < network.node_count(); ++i)
    for (const auto& [target, weight] : network.edges[i])
      out << network.node_codes[i] << ',' << network.node_codes[target] << ','
          << weight << '\n';
  return out.str();
}

}  // namespace opnet
