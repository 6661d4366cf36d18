#include "gsd/fft.hpp"

#include <cmath>

#include "gsd/errors.hpp"

namespace gsd {

void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw ContractError("fft size must be a power of two");
    }
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<double> magnitude_spectrum(const float* frame, std::size_t frame_len,
                                       std::size_t n_fft) {
    std::vector<std::complex<double>> buf(n_fft, {0.0, 0.0});
    const std::size_t m = frame_len < n_fft ? frame_len : n_fft;
    for (std::size_t i = 0; i < m; ++i) buf[i] = std::complex<double>(frame[i], 0.0);
    fft_inplace(buf);
    std::vector<double> mag(n_fft / 2 + 1);
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(buf[i]);
    return mag;
}

}  // namespace gsd
