#pragma once

#include <complex>
#include <vector>

// Internal FFTW wrapper: plan caching plus the planner lock.  Supports any
// transform size (the lattice cell is generally not a power of two).

namespace cnoidal::detail {

// in-place complex DFT; `sign` is -1 for forward (e^{-i...}), +1 for backward.
// No normalization either way.
void dft(std::vector<std::complex<double>>& data, int sign);

// forward DFT of real data divided by n: Fourier coefficients in FFT order
std::vector<std::complex<double>> coeffs_of(const std::vector<double>& values);
// inverse: values_j = sum_m c_m e^{2 pi i m j / n} (real part)
std::vector<double> values_of(const std::vector<std::complex<double>>& coeffs);

} // namespace cnoidal::detail
