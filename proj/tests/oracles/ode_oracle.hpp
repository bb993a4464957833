#pragma once

#include <array>
#include <complex>

namespace eitsim::oracle {

using Matrix3 = std::array<std::array<std::complex<double>, 3>, 3>;
using Vector3 = std::array<std::complex<double>, 3>;

// Integrates dx/dt = m x + src from x = 0 up to t = horizon with a stiff
// Rosenbrock stepper and returns x(horizon).
Vector3 integrate_linear(const Matrix3& m, const Vector3& src, double horizon);

}  // namespace eitsim::oracle
