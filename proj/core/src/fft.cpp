#include "wiman/fft.hpp"

#include <cmath>
#include <numbers>

#include "wiman/errors.hpp"

namespace wiman {

std::size_t next_pow2(std::size_t n) {
    std::size_t g = 1;
    while (g < n) g <<= 1;
    return g;
}

void fft_inplace(std::complex<double>* a, std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw Error("fft: size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
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

void fft_inplace(std::vector<std::complex<double>>& a) { fft_inplace(a.data(), a.size()); }

void fft_nd(std::vector<std::complex<double>>& a, const std::vector<std::size_t>& extents) {
    std::size_t total = 1;
    for (auto e : extents) total *= e;
    if (total != a.size()) throw Error("fft_nd: extent/product mismatch");

    const int p = static_cast<int>(extents.size());
    if (p == 1) { fft_inplace(a); return; }

    // transform axis by axis; gather strided lines into a scratch buffer
    std::vector<std::complex<double>> line;
    for (int axis = 0; axis < p; ++axis) {
        const std::size_t n = extents[static_cast<std::size_t>(axis)];
        std::size_t stride = 1;
        for (int j = p - 1; j > axis; --j) stride *= extents[static_cast<std::size_t>(j)];
        const std::size_t block = stride * n;
        line.resize(n);
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                std::complex<double>* start = a.data() + base + off;
                if (stride == 1) {
                    fft_inplace(start, n);
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i) line[i] = start[i * stride];
                fft_inplace(line.data(), n);
                for (std::size_t i = 0; i < n; ++i) start[i * stride] = line[i];
            }
        }
    }
}

} // namespace wiman
