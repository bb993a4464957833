#pragma once

#include <random>

#include "ode_oracle.hpp"
#include "support.hpp"

namespace eitsim::oracle {

using testing::make_system;
using testing::mhz;

struct Draw {
  AtomicSystem sys;
  double signal_detuning;
  double doppler_shift;
};

inline Draw random_draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SchemeId id = u(rng) < 0.5 ? SchemeId::A : SchemeId::B;
  const double pressure = 0.5 + 39.5 * u(rng);
  const double power = std::pow(10.0, -1.0 + 2.0 * u(rng));
  Draw d{make_system(id, pressure, power), 0.0, 0.0};
  d.sys.env = derive_environment(300.0 + 80.0 * u(rng), pressure, 2.5e17, d.sys.env.geometry);
  d.sys.fields.bz = -50.0 + 100.0 * u(rng);
  d.sys.fields.pump_detuning = mhz(-5.0 + 10.0 * u(rng));
  d.signal_detuning = d.sys.fields.pump_detuning + d.sys.scheme.resonance_slope() * d.sys.fields.bz +
                      mhz(-20.0 + 40.0 * u(rng));
  d.doppler_shift = d.sys.env.doppler_width * (-2.0 + 4.0 * u(rng));
  return d;
}

// d rho/dt for the three signal coherences, written out term by term. Time is
// in units of 1/gamma_e and the signal Rabi frequency is one.
struct CoherenceEquations {
  Matrix3 m{};
  Vector3 src{};

  explicit CoherenceEquations(const Draw& d) {
    const AtomicSystem& s = d.sys;
    const ShiftedDetunings det =
        shifted_detunings(s.scheme, s.fields, d.signal_detuning, s.env.pressure);
    const cplx i(0.0, 1.0);
    const double pump = s.fields.pump_rabi;
    const double b24 = s.scheme.beta24;
    const double g = s.env.gamma_e;
    // ground coherence: two-photon detuning, diffusion loss, pump coupling to both optical coherences
    m[0][0] = (i * (det.signal - det.pump) - s.env.gamma_diff) / g;
    m[0][1] = -0.5 * i * pump / g;
    m[0][2] = -0.5 * i * b24 * pump / g;
    // optical coherences see the Doppler shift and decay at gamma_e
    m[1][0] = -0.5 * i * pump / g;
    m[1][1] = (i * (det.signal + d.doppler_shift) - g) / g;
    m[2][0] = -0.5 * i * b24 * pump / g;
    m[2][2] = (i * (det.signal - det.excited_splitting + d.doppler_shift) - g) / g;
    src = {0.0, -0.5 * i / g, -0.5 * i * s.scheme.beta14 / g};
  }
};

}  // namespace eitsim::oracle
