#include "eitsim/faddeeva.hpp"

#include <cmath>
#include <numbers>

#include "eitsim/errors.hpp"

namespace eitsim {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};
constexpr double kStep = 0.4;
constexpr int kTerms = 18;
constexpr double kSmallRadius = 7.0;
constexpr int kFractionDepth = 40;

// Trapezoid rule on the integral representation with the pole correction
// (Chiarella & Reichel). The node grid is shifted by h/2 whenever Re z sits
// close to an integer node to avoid cancellation.
cplx faddeeva_trapezoid(cplx z) {
  const double h = kStep;
  const double x = z.real() / h;
  const bool shifted = std::abs(x - std::round(x)) < 0.25;
  const double offset = shifted ? 0.5 : 0.0;
  cplx sum = 0.0;
  for (int n = -kTerms - 1; n <= kTerms; ++n) {
    const double t = (n + offset) * h;
    sum += std::exp(-t * t) / (z - t);
  }
  cplx w = kI * h / std::numbers::pi * sum;
  if (z.imag() < std::numbers::pi / h) {
    const cplx e = std::exp(-2.0 * std::numbers::pi * kI * z / h);
    w += 2.0 * std::exp(-z * z) / (shifted ? 1.0 + e : 1.0 - e);
  }
  return w;
}

// Laplace continued fraction, accurate for large |z| in the upper half-plane.
cplx faddeeva_fraction(cplx z) {
  cplx t = z;
  for (int k = kFractionDepth; k >= 1; --k) t = z - (0.5 * k) / t;
  return kI / (std::sqrt(std::numbers::pi) * t);
}

cplx faddeeva_upper(cplx z) {
  if (std::abs(z) <= kSmallRadius) return faddeeva_trapezoid(z);
  return faddeeva_fraction(z);
}

}  // namespace

cplx faddeeva(cplx z) {
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  // w(z) = 2 exp(-z^2) - w(-z)
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

cplx gaussian_pole_average(cplx pole, double center, double width) {
  if (!(width > 0.0)) throw DomainError("width", "must be positive");
  const cplx z = (pole - center) / width;
  const double root_pi = std::sqrt(std::numbers::pi);
  if (z.imag() > 0.0) return kI * root_pi * faddeeva_upper(z) / width;
  if (z.imag() < 0.0) return -kI * root_pi * std::conj(faddeeva_upper(std::conj(z))) / width;
  throw DomainError("pole", "lies on the real axis");
}

}  // namespace eitsim
