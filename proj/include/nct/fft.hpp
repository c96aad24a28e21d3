#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "nct/errors.hpp"

namespace nct {

/// In-place radix-2 Cooley-Tukey transform; size must be a power of two.
/// Unnormalized forward, 1/N on the inverse.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw Error("fft size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> t = a[i + k + len / 2] * w;
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

/// Signed frequency of DFT bin k for size n: k for k < n/2, else k - n.
inline long long signed_bin(std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<long long>(k)
                     : static_cast<long long>(k) - static_cast<long long>(n);
}

}  // namespace nct
