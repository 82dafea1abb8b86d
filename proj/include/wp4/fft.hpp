#pragma once

#include <complex>
#include <vector>

namespace wp4 {

/// In-place radix-2 FFT, x.size() must be a power of two.
/// Forward uses exp(-2*pi*i*k*n/N); inverse is unscaled (divide by N yourself).
void fft(std::vector<std::complex<double>>& x, bool inverse = false);

std::size_t next_pow2(std::size_t n);

}  // namespace wp4
