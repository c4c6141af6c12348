#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opnet/error.hpp"

namespace opnet {

// A scalar time series. Values must be finite and there must be at least
// two of them; validate() enforces this and every ingestion path calls it.
struct TimeSeries {
  std::string id;
  std::optional<std::string> group;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

// Throws Error (naming the series id and offending index) if the series is
// shorter than two samples or contains a non-finite value.
void validate(const TimeSeries& series);

TimeSeries make_series(std::string id, std::vector<double> values,
                       std::optional<std::string> group = std::nullopt);

// Returns a copy with the sample order reversed.
TimeSeries reversed_copy(const TimeSeries& series);

// Keeps the first n samples. n == 0 or n > size() is an error.
TimeSeries truncated(const TimeSeries& series, std::size_t n);

// Direction in which a series is read when extracting ordinal patterns.
enum class Direction { Forward, Reverse };

const char* to_string(Direction d);
Direction direction_from_string(const std::string& name);

// Embedding dimension m and delay tau for ordinal pattern extraction.
struct EmbeddingParams {
  int m = 3;
  int tau = 1;
};

// Number of embedding vectors a series of length n yields: n - (m-1)*tau.
// Throws unless m >= 1, tau >= 1, m <= 20 and at least two vectors fit.
std::size_t embedding_count(EmbeddingParams p, std::size_t n);

// True when at least two embedding vectors fit a series of length n.
bool embedding_fits(EmbeddingParams p, std::size_t n);

// A set of series partitioned into named groups. Series ids are unique;
// group membership lists reference existing ids and preserve input order.
struct GroupedDataset {
  std::vector<TimeSeries> series;
  std::map<std::string, std::vector<std::string>> groups;

  const TimeSeries& series_by_id(const std::string& id) const;
  std::vector<const TimeSeries*> members(const std::string& group) const;
};

void validate(const GroupedDataset& dataset);

}  // namespace opnet
