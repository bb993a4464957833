#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eitsim/gradient.hpp"

namespace eitsim {

struct ChannelSettings {
  GradientSettings gradient;
  double linear_tolerance = 0.1;  // allowed relative departure of Re chi from the linear slope
  int bisection_steps = 30;
};

struct ChannelPerformance {
  double gradient = 0.0;             // gauss/m
  double bandwidth = 0.0;            // beta_eff, rad/s
  double max_mismatch = 0.0;         // delta_max, rad/s
  double dispersion_slope = 0.0;     // S_disp, rad/s per m
  double resonance_slope = 0.0;      // local two-photon slope across x, rad/s per m
  double effective_slope = 0.0;      // S_eff, s
  double max_optical_density = 0.0;  // 1/(2A)
  double max_delay = 0.0;            // s
  double delay_bandwidth = 0.0;
  double edge_detuning = 0.0;        // mismatch at the interaction edge, rad/s
  double local_bandwidth = 0.0;      // W/sqrt(D_max), rad/s
  bool linear_bound_active = false;
  bool absorption_clamped = false;
  double closed_form_effective_slope = 0.0;
  double closed_form_delay_bandwidth = 0.0;
  ResonanceParams resonance;
  std::vector<std::string> warnings;
};

// Pipeline for a gradient in gauss/m.
ChannelPerformance channel_performance(const AtomicSystem& sys, double gradient,
                                       const ChannelSettings& settings = {});

struct EnvironmentInputs {
  double temperature = 333.0;   // K
  double density = 2.5e17;      // m^-3
  Geometry geometry;
};

struct PressurePoint {
  double pressure = 0.0;
  std::optional<ChannelPerformance> performance;
  std::string error;
};

struct PressureScan {
  std::vector<PressurePoint> points;
  std::optional<std::size_t> best;  // index of the largest delay-bandwidth product
};

PressureScan pressure_scan(const LevelScheme& scheme, const EnvironmentInputs& inputs,
                           const FieldConfig& fields, double gradient,
                           const std::vector<double>& pressures, const ChannelSettings& settings,
                           unsigned threads);

}  // namespace eitsim
