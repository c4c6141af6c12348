#pragma once

#include <complex>
#include <vector>

namespace opnet {

// Discrete Fourier transform for arbitrary length N (iterative radix-2 for
// powers of two, Bluestein's chirp-z otherwise — the signal itself is never
// zero-padded). Plans are cached per length and shared across threads.
// Unnormalized forward transform; inverse_fft divides by N.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& input);
std::vector<std::complex<double>> inverse_fft(const std::vector<std::complex<double>>& input);

// Convenience wrappers for real signals.
std::vector<std::complex<double>> fft_real(const std::vector<double>& input);
// Real parts of the inverse transform (the caller guarantees the spectrum
// is conjugate-symmetric up to rounding).
std::vector<double> inverse_fft_real(const std::vector<std::complex<double>>& spectrum);

}  // namespace opnet
