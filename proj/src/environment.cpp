#include "eitsim/environment.hpp"

#include <cmath>

#include "eitsim/errors.hpp"

namespace eitsim {

namespace {
constexpr double kBesselZero = 2.405;
constexpr double kSlipFactor = 6.8;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(name, "must be positive and finite");
}
}  // namespace

double thermal_velocity(double temperature_k, const PhysicalConstants& c) {
  require_positive(temperature_k, "temperature");
  return std::sqrt(3.0 * kBoltzmann * temperature_k / c.atomic_mass);
}

double doppler_width(double temperature_k, const PhysicalConstants& c) {
  return std::sqrt(2.0 / 3.0) * kTwoPi * thermal_velocity(temperature_k, c) / c.wavelength;
}

Environment derive_environment(double temperature_k, double pressure_torr, double density_m3,
                               const Geometry& geometry, const PhysicalConstants& c) {
  require_positive(temperature_k, "temperature");
  require_positive(pressure_torr, "pressure");
  if (!(density_m3 >= 0.0) || !std::isfinite(density_m3))
    throw DomainError("density", "must be nonnegative and finite");
  require_positive(geometry.cell_length, "cell_length");
  require_positive(geometry.width, "width");
  require_positive(geometry.height, "height");

  Environment e;
  e.temperature = temperature_k;
  e.pressure = pressure_torr;
  e.density = density_m3;
  e.geometry = geometry;

  e.thermal_velocity = thermal_velocity(temperature_k, c);
  e.diffusion_constant =
      c.diffusion_ref / pressure_torr * std::sqrt(temperature_k / c.diffusion_ref_temperature);
  e.mean_free_path = 3.0 * e.diffusion_constant / e.thermal_velocity;

  const double area = geometry.width * geometry.height;
  e.gamma_diff = (2.0 / 3.0) * kBesselZero * kBesselZero * e.diffusion_constant / area /
                 (1.0 + kSlipFactor * e.mean_free_path / std::sqrt(area));
  e.gamma_e = c.radiative_decay / 2.0 + c.pressure_broadening * pressure_torr;
  e.doppler_width = doppler_width(temperature_k, c);
  return e;
}

}  // namespace eitsim
