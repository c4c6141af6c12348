#include "opnet/filter.hpp"

#include <cmath>
#include <vector>

#include "opnet/error.hpp"

namespace opnet {

namespace {

// Mean of up to `window` values preceding index i in the working series.
double running_mean(const std::vector<double>& x, std::size_t i, int window) {
  std::size_t take = std::min<std::size_t>(i, static_cast<std::size_t>(window));
  double sum = 0.0;
  for (std::size_t k = i - take; k < i; ++k) sum += x[k];
  return sum / static_cast<double>(take);
}

bool is_jump(double value, double neighbour, double fraction) {
  return std::abs(value - neighbour) / neighbour > fraction;
}

}  // namespace

FilterReport adaptive_filter(const TimeSeries& series, const FilterOptions& options) {
  validate(series);
  if (options.window < 1) throw Error("filter window must be >= 1");
  if (options.jump_fraction <= 0.0) throw Error("jump fraction must be > 0");
  if (options.lower_bound >= options.upper_bound)
    throw Error("filter bounds must satisfy lower < upper");

  FilterReport report;
  report.original_length = series.values.size();

  // Pass 1: drop out-of-range values (bounds themselves are acceptable).
  std::vector<double> x;
  x.reserve(series.values.size());
  for (double v : series.values) {
    if (v > options.upper_bound || v < options.lower_bound)
      ++report.removed_count;
    else
      x.push_back(v);
  }

  // Pass 2: left-to-right replacement of points that jump away from both
  // neighbours, repeated until a sweep makes no change so that the output
  // is a fixpoint of the filter. Positions are counted once even if a
  // later sweep touches them again.
  std::vector<bool> replaced(x.size(), false);
  if (x.size() >= 3) {
    const std::size_t max_sweeps = x.size() + 1;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
      bool changed = false;
      for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (is_jump(x[i], x[i - 1], options.jump_fraction) &&
            is_jump(x[i], x[i + 1], options.jump_fraction)) {
          double mean = running_mean(x, i, options.window);
          if (x[i] != mean) {
            x[i] = mean;
            changed = true;
            if (!replaced[i]) {
              replaced[i] = true;
              ++report.replaced_count;
            }
          }
        }
      }
      if (!changed) break;
    }
  }

  report.modified_fraction =
      static_cast<double>(report.removed_count + report.replaced_count) /
      static_cast<double>(report.original_length);
  report.accepted = report.modified_fraction <= options.reject_threshold;

  report.filtered.id = series.id;
  report.filtered.group = series.group;
  report.filtered.values = std::move(x);
  if (report.filtered.values.size() < 2)
    throw Error("series '" + series.id + "': fewer than 2 samples survive filtering");
  return report;
}

}  // namespace opnet
