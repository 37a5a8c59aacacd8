#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace wiman {

// In-place iterative radix-2 FFT (forward, unnormalized).  Size must be a
// power of two.
void fft_inplace(std::vector<std::complex<double>>& a);
void fft_inplace(std::complex<double>* a, std::size_t n);

// Forward FFT along every axis of a flattened row-major array with
// power-of-two extents.
void fft_nd(std::vector<std::complex<double>>& a, const std::vector<std::size_t>& extents);

std::size_t next_pow2(std::size_t n);

} // namespace wiman
