#pragma once

#include <complex>

#include "eitsim/constants.hpp"
#include "eitsim/environment.hpp"
#include "eitsim/evolution.hpp"
#include "eitsim/fields.hpp"
#include "eitsim/level_scheme.hpp"

namespace eitsim::testing {

// Baseline cell: 333 K, 2.5e11 cm^-3, 1 cm long, pump power spread over w x h.
inline AtomicSystem make_system(SchemeId id, double pressure_torr, double power_mw = 1.0,
                                double width_mm = 2.0, double height_mm = 2.0) {
  const LevelScheme scheme = make_scheme(id);
  Geometry g;
  g.width = width_mm * 1e-3;
  g.height = height_mm * 1e-3;
  AtomicSystem sys{scheme, derive_environment(333.0, pressure_torr, 2.5e17, g), {}};
  sys.fields.pump_rabi = rabi_from_power(power_mw * 1e-3, g.width, g.height, scheme.f23);
  return sys;
}

inline AtomicSystem wide_channel_system(SchemeId id, double pressure_torr) {
  return make_system(id, pressure_torr, 5.0, 20.0, 0.5);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::abs(b);
}

inline double mhz(double v) { return kTwoPi * 1e6 * v; }

}  // namespace eitsim::testing
