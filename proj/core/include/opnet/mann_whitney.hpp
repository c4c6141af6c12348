#pragma once

#include <vector>

namespace opnet {

enum class MwMethod { Exact, NormalApprox };

struct MannWhitneyResult {
  double u_statistic = 0.0;  // U of sample_a: #(a > b) pairs, ties count 1/2
  double p_value = 1.0;      // two-sided
  MwMethod method = MwMethod::Exact;
};

// Two-sided Mann-Whitney U test. The exact null distribution (dynamic
// programming over rank arrangements) is used when n1*n2 <= 400 and the
// pooled samples are tie-free; otherwise the normal approximation with
// tie-corrected variance and continuity correction. A zero-variance null
// (e.g. all pooled values identical) yields p = 1. Empty samples raise.
MannWhitneyResult mann_whitney(const std::vector<double>& sample_a,
                               const std::vector<double>& sample_b);

}  // namespace opnet
