#pragma once

// Iterative radix-2 complex FFT, enough for the spectral kernel construction.
// Lengths must be powers of two.

#include <complex>
#include <vector>

#include "common.hpp"

namespace msdeconv {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place transform; inverse = conjugate convention e^{+i...} without 1/n scaling.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw ConfigError("fft: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// d-dimensional transform of a flat row-major array with shape dims.
inline void fft_nd_inplace(std::vector<std::complex<double>>& a, const std::vector<std::size_t>& dims,
                           bool inverse) {
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    if (a.size() != total) throw ConfigError("fft_nd: size/shape mismatch");
    std::size_t stride = 1;
    for (std::size_t axis = dims.size(); axis-- > 0;) {
        const std::size_t n = dims[axis];
        std::vector<std::complex<double>> line(n);
        const std::size_t outer = total / (n * stride);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t s = 0; s < stride; ++s) {
                const std::size_t base = o * n * stride + s;
                for (std::size_t k = 0; k < n; ++k) line[k] = a[base + k * stride];
                fft_inplace(line, inverse);
                for (std::size_t k = 0; k < n; ++k) a[base + k * stride] = line[k];
            }
        }
        stride *= n;
    }
}

}  // namespace msdeconv
