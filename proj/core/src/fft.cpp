#include "opnet/fft.hpp"

#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "opnet/error.hpp"

namespace opnet {

namespace {

using cd = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 Cooley-Tukey, in place, size must be a power of two.
void fft_pow2(std::vector<cd>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double angle = 2.0 * std::numbers::pi / static_cast<double>(len) *
                   (inverse ? 1.0 : -1.0);
    cd wlen = std::polar(1.0, angle);
    for (std::size_t i = 0; i < n; i += len) {
      cd w = 1.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        cd u = a[i + k];
        cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

// Bluestein chirp data for one length, reused across calls.
struct BluesteinPlan {
  std::size_t n = 0;
  std::size_t conv_size = 0;          // power of two >= 2n-1
  std::vector<cd> chirp;              // a_k = exp(-i*pi*k^2/n)
  std::vector<cd> kernel_spectrum;    // FFT of conj chirp, circularly wrapped
};

std::shared_ptr<const BluesteinPlan> bluestein_plan(std::size_t n) {
  static std::mutex mutex;
  static std::unordered_map<std::size_t, std::shared_ptr<const BluesteinPlan>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  auto plan = std::make_shared<BluesteinPlan>();
  plan->n = n;
  plan->conv_size = next_pow2(2 * n - 1);
  plan->chirp.resize(n);
  // Angles reduced mod 2n before multiplying by pi/n keeps k^2 exact.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t k2 = (k * k) % (2 * n);
    double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    plan->chirp[k] = std::polar(1.0, angle);
  }
  std::vector<cd> kernel(plan->conv_size, cd{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    cd b = std::conj(plan->chirp[k]);
    kernel[k] = b;
    if (k != 0) kernel[plan->conv_size - k] = b;
  }
  fft_pow2(kernel, false);
  plan->kernel_spectrum = std::move(kernel);

  auto shared = std::shared_ptr<const BluesteinPlan>(plan);
  cache.emplace(n, shared);
  return shared;
}

// Arbitrary-length DFT via chirp-z: x_k a_k convolved with the conjugate
// chirp equals the DFT up to the final chirp factor.
std::vector<cd> fft_bluestein(const std::vector<cd>& input, bool inverse) {
  const std::size_t n = input.size();
  auto plan = bluestein_plan(n);

  std::vector<cd> work(plan->conv_size, cd{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    cd a = inverse ? std::conj(plan->chirp[k]) : plan->chirp[k];
    work[k] = input[k] * a;
  }
  fft_pow2(work, false);
  for (std::size_t k = 0; k < plan->conv_size; ++k) {
    cd spec = plan->kernel_spectrum[k];
    if (inverse) spec = std::conj(spec);
    work[k] *= spec;
  }
  fft_pow2(work, true);

  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd a = inverse ? std::conj(plan->chirp[k]) : plan->chirp[k];
    out[k] = work[k] * a;
    if (inverse) out[k] /= static_cast<double>(n);
  }
  return out;
}

std::vector<cd> transform(const std::vector<cd>& input, bool inverse) {
  if (input.empty()) throw Error("FFT of empty signal");
  if (is_pow2(input.size())) {
    std::vector<cd> data = input;
    fft_pow2(data, inverse);
    return data;
  }
  return fft_bluestein(input, inverse);
}

}  // namespace

std::vector<cd> fft(const std::vector<cd>& input) { return transform(input, false); }

std::vector<cd> inverse_fft(const std::vector<cd>& input) {
  return transform(input, true);
}

std::vector<cd> fft_real(const std::vector<double>& input) {
  std::vector<cd> data(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) data[i] = cd{input[i], 0.0};
  return fft(data);
}

std::vector<double> inverse_fft_real(const std::vector<cd>& spectrum) {
  std::vector<cd> data = inverse_fft(spectrum);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return out;
}

}  // namespace opnet
