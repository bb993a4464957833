#pragma once

#include <numbers>

namespace eitsim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kBoltzmann = 1.380649e-23;        // J/K
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kSpeedOfLight = 299792458.0;      // m/s

// Angular frequencies are rad/s throughout.
struct PhysicalConstants {
  double radiative_decay = kTwoPi * 6.0e6;
  double wavelength = 795.0e-9;                    // m
  double zeeman_slope = kTwoPi * 1.4e6;            // rad/s per gauss
  double excited_hyperfine = kTwoPi * 817.0e6;
  double excited_pressure_shift = -kTwoPi * 0.9e6;  // rad/s per Torr
  double pressure_broadening = kTwoPi * 5.0e6;     // rad/s per Torr
  double diffusion_ref = 410.0e-4;                 // m^2/s at 1 Torr
  double diffusion_ref_temperature = 273.0;        // K
  double atomic_mass = 86.909180527 * kAtomicMassUnit;

  constexpr double unity_cross_section() const {
    return 3.0 * wavelength * wavelength / kTwoPi;
  }
};

inline constexpr PhysicalConstants kRb87{};

constexpr double mhz_to_rad_s(double mhz) { return kTwoPi * 1.0e6 * mhz; }
constexpr double rad_s_to_mhz(double w) { return w / (kTwoPi * 1.0e6); }

// Checks the sign conventions of a constants table; throws DomainError.
void validate(const PhysicalConstants& c);

}  // namespace eitsim
