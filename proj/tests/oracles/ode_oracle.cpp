#include "ode_oracle.hpp"

#include <boost/numeric/odeint.hpp>

namespace eitsim::oracle {

namespace {

namespace ublas = boost::numeric::ublas;
using State = ublas::vector<double>;
using Jacobian = ublas::matrix<double>;

struct System {
  Jacobian a{6, 6};
  State b{6};

  void operator()(const State& x, State& dxdt, double) const { dxdt = ublas::prod(a, x) + b; }
};

struct SystemJacobian {
  const System* sys;
  void operator()(const State&, Jacobian& j, double, State& dfdt) const {
    j = sys->a;
    for (auto& v : dfdt) v = 0.0;
  }
};

}  // namespace

Vector3 integrate_linear(const Matrix3& m, const Vector3& src, double horizon) {
  namespace odeint = boost::numeric::odeint;
  System sys;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      sys.a(r, c) = m[r][c].real();
      sys.a(r, c + 3) = -m[r][c].imag();
      sys.a(r + 3, c) = m[r][c].imag();
      sys.a(r + 3, c + 3) = m[r][c].real();
    }
    sys.b(r) = src[r].real();
    sys.b(r + 3) = src[r].imag();
  }
  State x(6);
  for (auto& v : x) v = 0.0;
  auto stepper = odeint::make_dense_output<odeint::rosenbrock4<double>>(1e-15, 1e-11);
  odeint::integrate_adaptive(stepper, std::make_pair(sys, SystemJacobian{&sys}), x, 0.0, horizon,
                             1e-3);
  Vector3 out;
  for (int k = 0; k < 3; ++k) out[k] = {x(k), x(k + 3)};
  return out;
}

}  // namespace eitsim::oracle
