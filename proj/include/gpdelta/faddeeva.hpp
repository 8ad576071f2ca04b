#pragma once

#include <complex>

namespace gpdelta {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
// Throws std::range_error when exp(-z^2) would overflow (lower half plane
// with y^2 - x^2 above ~700) and std::domain_error for non-finite input.
std::complex<double> w_erfc(std::complex<double> z);

}  // namespace gpdelta
