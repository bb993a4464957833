#pragma once

#include <complex>

namespace eitsim {

// w(z) = exp(-z^2) erfc(-iz), valid in the whole complex plane.
std::complex<double> faddeeva(std::complex<double> z);

// <1/(x - pole)> for x Gaussian distributed with weight
// exp(-(x-center)^2/width^2)/(sqrt(pi) width). Requires width > 0 and a pole
// off the real axis.
std::complex<double> gaussian_pole_average(std::complex<double> pole, double center, double width);

}  // namespace eitsim
