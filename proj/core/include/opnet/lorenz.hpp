#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "opnet/time_series.hpp"

namespace opnet {

using Vec3 = std::array<double, 3>;

struct LorenzParams {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  double dt = 0.025;
  int n_transient = 1000;   // steps discarded before any output
  std::uint64_t seed = 0;   // drives randomized initial conditions
};

// One classical fourth-order Runge-Kutta step.
Vec3 lorenz_rk4_step(const LorenzParams& params, const Vec3& state);

// Fixed-step RK4 trajectory: discards the transient, then returns the state
// after each of `steps` further steps. Throws if the trajectory leaves the
// domain (non-finite values), reporting the step index.
std::vector<Vec3> integrate_lorenz(const LorenzParams& params, const Vec3& x0,
                                   int steps);

// Strict interior local maxima of a sampled signal, in order. A plateau
// that rises into equal values and falls afterwards yields one peak at the
// first plateau sample. Endpoints never qualify.
std::vector<double> extract_peaks(const std::vector<double>& signal);

// First n_peaks maxima; throws (reporting how many were found) if the
// signal contains fewer.
std::vector<double> extract_peaks(const std::vector<double>& signal, int n_peaks);

// First `count` x-component peaks of a Lorenz trajectory started at x0.
// Integration proceeds in chunks until the quota is met; throws if
// max_steps post-transient steps are not enough.
std::vector<double> lorenz_x_peaks(const LorenzParams& params, const Vec3& x0,
                                   int count, std::int64_t max_steps = 10'000'000);

// Ensemble of peak series from randomized initial conditions: run r draws
// its ICs uniformly from (0,1)^3 seeded by derive_seed(params.seed,
// "lorenz-ic", r) and contributes a series "lorenz-<r>" of n_peaks values.
std::vector<TimeSeries> make_lorenz_peak_ensemble(const LorenzParams& params,
                                                  int n_series, int n_peaks,
                                                  int threads = 0);

}  // namespace opnet
