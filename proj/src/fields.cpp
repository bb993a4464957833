#include "eitsim/fields.hpp"

#include <cmath>

#include "eitsim/constants.hpp"
#include "eitsim/errors.hpp"

namespace eitsim {

double rabi_calibration_constant() {
  const double ref_rabi = kTwoPi * 8.45e6;
  const double ref_strength = 1.0 / 12.0;
  const double ref_power = 1.0e-3;
  const double ref_area = 2.0e-3 * 2.0e-3;
  return ref_rabi / std::sqrt(ref_strength * ref_power / ref_area);
}

double rabi_from_power(double power_w, double width_m, double height_m, double oscillator_strength) {
  if (!(power_w > 0.0)) throw DomainError("pump_power", "must be positive");
  if (!(width_m > 0.0)) throw DomainError("width", "must be positive");
  if (!(height_m > 0.0)) throw DomainError("height", "must be positive");
  if (!(oscillator_strength > 0.0)) throw DomainError("oscillator_strength", "must be positive");
  return rabi_calibration_constant() *
         std::sqrt(oscillator_strength * power_w / (width_m * height_m));
}

void validate(const FieldConfig& f) {
  if (!(f.pump_rabi >= 0.0) || !std::isfinite(f.pump_rabi))
    throw DomainError("pump_rabi", "must be nonnegative and finite");
  if (!std::isfinite(f.pump_detuning)) throw DomainError("pump_detuning", "must be finite");
  if (!std::isfinite(f.bz)) throw DomainError("bz", "must be finite");
  if (!(f.gradient >= 0.0) || !std::isfinite(f.gradient))
    throw DomainError("gradient", "must be nonnegative and finite");
  if (!(f.signal_rabi > 0.0) || !std::isfinite(f.signal_rabi))
    throw DomainError("signal_rabi", "must be positive");
}

}  // namespace eitsim
