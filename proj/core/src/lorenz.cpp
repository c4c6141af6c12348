#include "opnet/lorenz.hpp"

#include <cmath>

#include "opnet/error.hpp"
#include "opnet/parallel.hpp"
#include "opnet/rng.hpp"

namespace opnet {

namespace {

Vec3 lorenz_rhs(const LorenzParams& p, const Vec3& s) {
  return {p.sigma * (s[1] - s[0]),
          s[0] * (p.rho - s[2]) - s[1],
          s[0] * s[1] - p.beta * s[2]};
}

Vec3 axpy(const Vec3& a, double h, const Vec3& b) {
  return {a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]};
}

bool finite(const Vec3& s) {
  return std::isfinite(s[0]) && std::isfinite(s[1]) && std::isfinite(s[2]);
}

void validate_params(const LorenzParams& p) {
  if (p.dt <= 0.0) throw Error("Lorenz integration step dt must be > 0");
  if (p.n_transient < 0) throw Error("Lorenz transient step count must be >= 0");
}

// Streaming peak scan over runs of equal values: a run entered by a strict
// rise and left by a strict fall is one peak (the plateau's common value).
class PeakScanner {
public:
  // Feed the next sample; returns true when a peak is confirmed, in which
  // case *peak (if non-null) holds its value.
  bool feed(double x, double* peak) {
    if (!active_) {
      run_value_ = x;
      rose_ = false;
      active_ = true;
      return false;
    }
    if (x == run_value_) return false;  // plateau continues
    bool found = false;
    if (x < run_value_ && rose_) {
      if (peak) *peak = run_value_;
      found = true;
    }
    rose_ = x > run_value_;
    run_value_ = x;
    return found;
  }

private:
  double run_value_ = 0.0;
  bool rose_ = false;
  bool active_ = false;
};

}  // namespace

Vec3 lorenz_rk4_step(const LorenzParams& params, const Vec3& state) {
  const double h = params.dt;
  Vec3 k1 = lorenz_rhs(params, state);
  Vec3 k2 = lorenz_rhs(params, axpy(state, h / 2.0, k1));
  Vec3 k3 = lorenz_rhs(params, axpy(state, h / 2.0, k2));
  Vec3 k4 = lorenz_rhs(params, axpy(state, h, k3));
  Vec3 out;
  for (int c = 0; c < 3; ++c)
    out[c] = state[c] + h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
  return out;
}

std::vector<Vec3> integrate_lorenz(const LorenzParams& params, const Vec3& x0,
                                   int steps) {
  validate_params(params);
  if (steps < 1) throw Error("integrate_lorenz needs steps >= 1");
  if (!finite(x0)) throw Error("non-finite Lorenz initial condition");

  Vec3 state = x0;
  for (int i = 0; i < params.n_transient; ++i) {
    state = lorenz_rk4_step(params, state);
    if (!finite(state))
      throw Error("Lorenz trajectory diverged at transient step " + std::to_string(i));
  }
  std::vector<Vec3> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    state = lorenz_rk4_step(params, state);
    if (!finite(state))
      throw Error("Lorenz trajectory diverged at step " + std::to_string(i));
    trajectory.push_back(state);
  }
  return trajectory;
}

std::vector<double> extract_peaks(const std::vector<double>& signal) {
  std::vector<double> peaks;
  const std::size_t n = signal.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (signal[i - 1] < signal[i]) {
      // Extend over a possible plateau of equal values.
      std::size_t j = i;
      while (j + 1 < n && signal[j + 1] == signal[i]) ++j;
      if (j + 1 < n && signal[j + 1] < signal[i]) {
        peaks.push_back(signal[i]);  // first plateau sample
        i = j + 1;
        continue;
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  return peaks;
}

std::vector<double> extract_peaks(const std::vector<double>& signal, int n_peaks) {
  if (n_peaks < 1) throw Error("peak quota must be >= 1");
  std::vector<double> peaks = extract_peaks(signal);
  if (peaks.size() < static_cast<std::size_t>(n_peaks))
    throw Error("requested " + std::to_string(n_peaks) + " peaks but found only " +
                std::to_string(peaks.size()));
  peaks.resize(static_cast<std::size_t>(n_peaks));
  return peaks;
}

std::vector<double> lorenz_x_peaks(const LorenzParams& params, const Vec3& x0,
                                   int count, std::int64_t max_steps) {
  validate_params(params);
  if (count < 1) throw Error("peak quota must be >= 1");
  if (!finite(x0)) throw Error("non-finite Lorenz initial condition");

  Vec3 state = x0;
  for (int i = 0; i < params.n_transient; ++i) {
    state = lorenz_rk4_step(params, state);
    if (!finite(state))
      throw Error("Lorenz trajectory diverged at transient step " + std::to_string(i));
  }

  std::vector<double> peaks;
  peaks.reserve(static_cast<std::size_t>(count));
  PeakScanner scanner;
  scanner.feed(state[0], nullptr);  // post-transient state is the first sample
  for (std::int64_t step = 0; step < max_steps; ++step) {
    state = lorenz_rk4_step(params, state);
    if (!finite(state))
      throw Error("Lorenz trajectory diverged at step " + std::to_string(step));
    double peak = 0.0;
    if (scanner.feed(state[0], &peak)) {
      peaks.push_back(peak);
      if (peaks.size() == static_cast<std::size_t>(count)) return peaks;
    }
  }
  throw Error("found only " + std::to_string(peaks.size()) + " of " +
              std::to_string(count) + " Lorenz x peaks within " +
              std::to_string(max_steps) + " steps");
}

std::vector<TimeSeries> make_lorenz_peak_ensemble(const LorenzParams& params,
                                                  int n_series, int n_peaks,
                                                  int threads) {
  if (n_series < 1) throw Error("Lorenz ensemble needs n_series >= 1");
  std::vector<TimeSeries> ensemble(static_cast<std::size_t>(n_series));
  parallel_for(static_cast<std::size_t>(n_series), threads, [&](std::size_t r) {
    Rng rng(derive_seed(params.seed, "lorenz-ic", r));
    Vec3 x0{rng.uniform(), rng.uniform(), rng.uniform()};
    // (0,1)^3: uniform() can return 0; nudge into the open interval.
    for (auto& c : x0)
      if (c == 0.0) c = 0.5;
    ensemble[r] = make_series("lorenz-" + std::to_string(r),
                              lorenz_x_peaks(params, x0, n_peaks));
  });
  return ensemble;
}

}  // namespace opnet
