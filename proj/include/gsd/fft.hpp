#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gsd {

// In-place iterative radix-2 Cooley-Tukey. n must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a);

// Magnitude spectrum of a real frame zero-padded to n_fft (power of two).
// Returns n_fft/2 + 1 magnitudes.
std::vector<double> magnitude_spectrum(const float* frame, std::size_t frame_len,
                                       std::size_t n_fft);

}  // namespace gsd
