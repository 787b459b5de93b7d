#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace irrlab {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

/// In-place radix-2 FFT; size must be a power of two.
/// inverse=true applies the conjugate transform and divides by n.
void fft(std::vector<cplx>& a, bool inverse);

/// Discrete Fourier transform for arbitrary length: radix-2 when possible,
/// otherwise Bluestein via zero-padded FFTs.
std::vector<cplx> dft(const std::vector<cplx>& a, bool inverse);

/// Separable multi-dimensional DFT on a row-major grid.
std::vector<cplx> dft_nd(std::vector<cplx> data, const std::vector<std::size_t>& dims, bool inverse);

/// Linear convolution of two real sequences (length na+nb-1) via padded FFT.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace irrlab
