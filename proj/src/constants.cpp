#include "eitsim/constants.hpp"

#include "eitsim/errors.hpp"

namespace eitsim {

void validate(const PhysicalConstants& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(name, "must be positive");
  };
  positive(c.radiative_decay, "radiative_decay");
  positive(c.wavelength, "wavelength");
  positive(c.zeeman_slope, "zeeman_slope");
  positive(c.excited_hyperfine, "excited_hyperfine");
  positive(c.pressure_broadening, "pressure_broadening");
  positive(c.diffusion_ref, "diffusion_ref");
  positive(c.diffusion_ref_temperature, "diffusion_ref_temperature");
  positive(c.atomic_mass, "atomic_mass");
  if (!(c.excited_pressure_shift < 0.0))
    throw DomainError("excited_pressure_shift", "must be negative");
}

}  // namespace eitsim
