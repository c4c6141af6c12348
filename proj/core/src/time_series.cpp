#include "opnet/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace opnet {

void validate(const TimeSeries& series) {
  if (series.values.size() < 2)
    throw Error("series '" + series.id + "': need at least 2 samples, got " +
                std::to_string(series.values.size()));
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (!std::isfinite(series.values[i]))
      throw Error("series '" + series.id + "': non-finite value at index " +
                  std::to_string(i));
  }
}

TimeSeries make_series(std::string id, std::vector<double> values,
                       std::optional<std::string> group) {
  TimeSeries s{std::move(id), std::move(group), std::move(values)};
  validate(s);
  return s;
}

TimeSeries reversed_copy(const TimeSeries& series) {
  TimeSeries out = series;
  std::reverse(out.values.begin(), out.values.end());
  return out;
}

TimeSeries truncated(const TimeSeries& series, std::size_t n) {
  if (n == 0 || n > series.values.size())
    throw Error("series '" + series.id + "': cannot truncate length " +
                std::to_string(series.values.size()) + " to " + std::to_string(n));
  TimeSeries out = series;
  out.values.resize(n);
  return out;
}

const char* to_string(Direction d) {
  return d == Direction::Forward ? "forward" : "reverse";
}

Direction direction_from_string(const std::string& name) {
  if (name == "forward" || name == "fwd") return Direction::Forward;
  if (name == "reverse" || name == "rev") return Direction::Reverse;
  throw Error("unknown direction '" + name + "' (expected forward|reverse)");
}

std::size_t embedding_count(EmbeddingParams p, std::size_t n) {
  if (p.m < 1 || p.tau < 1)
    throw Error("embedding requires m >= 1 and tau >= 1, got m=" +
                std::to_string(p.m) + " tau=" + std::to_string(p.tau));
  if (p.m > 20)
    throw Error("embedding dimension m=" + std::to_string(p.m) +
                " exceeds the supported maximum of 20");
  std::size_t span = static_cast<std::size_t>(p.m - 1) * static_cast<std::size_t>(p.tau);
  if (n < span + 2)
    throw Error("series of length " + std::to_string(n) +
                " yields fewer than 2 embedding vectors for m=" + std::to_string(p.m) +
                " tau=" + std::to_string(p.tau));
  return n - span;
}

bool embedding_fits(EmbeddingParams p, std::size_t n) {
  if (p.m < 1 || p.tau < 1 || p.m > 20) return false;
  std::size_t span = static_cast<std::size_t>(p.m - 1) * static_cast<std::size_t>(p.tau);
  return n >= span + 2;
}

const TimeSeries& GroupedDataset::series_by_id(const std::string& id) const {
  for (const auto& s : series)
    if (s.id == id) return s;
  throw Error("no series with id '" + id + "' in dataset");
}

std::vector<const TimeSeries*> GroupedDataset::members(const std::string& group) const {
  auto it = groups.find(group);
  if (it == groups.end()) throw Error("no group named '" + group + "' in dataset");
  std::vector<const TimeSeries*> out;
  out.reserve(it->second.size());
  for (const auto& id : it->second) out.push_back(&series_by_id(id));
  return out;
}

void validate(const GroupedDataset& dataset) {
  std::set<std::string> ids;
  for (const auto& s : dataset.series) {
    validate(s);
    if (!ids.insert(s.id).second) throw Error("duplicate series id '" + s.id + "'");
  }
  for (const auto& [group, member_ids] : dataset.groups) {
    if (group.empty()) throw Error("empty group name in dataset");
    if (member_ids.empty()) throw Error("group '" + group + "' has no members");
    std::set<std::string> seen;
    for (const auto& id : member_ids) {
      if (!ids.count(id))
        throw Error("group '" + group + "' references unknown series '" + id + "'");
      if (!seen.insert(id).second)
        throw Error("group '" + group + "' lists series '" + id + "' twice");
    }
  }
}

}  // namespace opnet
