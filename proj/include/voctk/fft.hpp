#pragma once

#include <complex>
#include <vector>

namespace voctk {

using cdouble = std::complex<double>;

// Forward DFT, X[k] = sum_n x[n] exp(-2*pi*i*k*n/N). Any length >= 1:
// power-of-two sizes use radix-2, the rest go through Bluestein.
std::vector<cdouble> fft(std::vector<cdouble> x);

// Inverse transform including the 1/N scale.
std::vector<cdouble> ifft(std::vector<cdouble> x);

std::vector<cdouble> fft_real(const std::vector<double>& x);

} // namespace voctk
