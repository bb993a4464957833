#pragma once

namespace eitsim {

struct FieldConfig {
  double pump_rabi = 0.0;       // rad/s, real and nonnegative
  double pump_detuning = 0.0;   // rad/s
  double bz = 0.0;              // gauss
  double gradient = 0.0;        // gauss/m
  double signal_rabi = 1.0e3;   // rad/s; susceptibilities do not depend on it
};

// Rabi frequency (rad/s) from pump power (W), interaction area (m) and the
// pump transition oscillator strength. Calibrated so that 1 mW over (2 mm)^2
// with f = 1/12 gives 2pi x 8.45 MHz.
double rabi_from_power(double power_w, double width_m, double height_m, double oscillator_strength);

double rabi_calibration_constant();

void validate(const FieldConfig& f);

}  // namespace eitsim
