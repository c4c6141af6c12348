#pragma once

#include <cstddef>

#include "opnet/time_series.hpp"

namespace opnet {

// Artifact filter for RR-interval-like series (values in milliseconds).
struct FilterOptions {
  double lower_bound = 350.0;    // values < lower_bound are removed
  double upper_bound = 1200.0;   // values > upper_bound are removed
  double jump_fraction = 0.20;   // relative deviation from both neighbours
  int window = 5;                // running-mean history length
  double reject_threshold = 0.10;
};

struct FilterReport {
  TimeSeries filtered;
  std::size_t original_length = 0;
  std::size_t removed_count = 0;    // pass 1: out-of-range values dropped
  std::size_t replaced_count = 0;   // pass 2: values replaced by running mean
  double modified_fraction = 0.0;   // (removed + replaced) / original_length
  bool accepted = false;            // modified_fraction <= reject_threshold
};

// Two-pass filter. Pass 1 removes values outside (lower_bound, upper_bound)
// inclusive of the bounds themselves. Pass 2 walks left to right and
// replaces x[i] (interior points only) when it deviates from BOTH
// neighbours by more than jump_fraction relative to each neighbour; the
// replacement is the mean of up to `window` preceding values of the working
// series. Pass 2 repeats until a sweep changes nothing, so filtering a
// filtered series is a no-op. Each replaced position is counted once.
FilterReport adaptive_filter(const TimeSeries& series,
                             const FilterOptions& options = {});

}  // namespace opnet
