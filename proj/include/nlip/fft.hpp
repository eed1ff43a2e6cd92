#ifndef NLIP_FFT_HPP
#define NLIP_FFT_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nlip/common.hpp"

namespace nlip {

// In-place iterative radix-2 Cooley-Tukey transform, forward convention
// X_k = sum_j x_j exp(-2 pi i j k / n).  n must be a power of two.
inline void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -two_pi / static_cast<double>(len);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
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

// Fourier coefficients G_k = (1/n) sum_j g_j e^{-i k t_j} for k = 0..n/2 of a
// real periodic grid function (uniform grid t_j = 2 pi j / n).
inline std::vector<std::complex<double>> fourier_coeffs(const std::vector<double>& g) {
    std::vector<std::complex<double>> a(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) a[i] = g[i];
    fft_inplace(a);
    std::vector<std::complex<double>> out(g.size() / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] / static_cast<double>(g.size());
    return out;
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace nlip

#endif
