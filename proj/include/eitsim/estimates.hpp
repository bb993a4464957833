#pragma once

#include "eitsim/evolution.hpp"

namespace eitsim {

struct ResonanceParams;

struct AnalyticEstimates {
  double absorption = 0.0;            // A
  double slope = 0.0;                 // S, seconds
  double width = 0.0;                 // W, rad/s
  double offres_absorption = 0.0;     // level 4 contribution to A
  double ac_stark_shift = 0.0;        // rad/s
  double gradient_absorption = 0.0;   // A_grad at fields.gradient
};

// Throws DomainError when the pump Rabi frequency is zero.
AnalyticEstimates analytic_estimates(const AtomicSystem& sys);

struct PulseFigures {
  double optical_density = 0.0;
  double delay = 0.0;           // s
  double loss = 0.0;            // fraction
  double bandwidth = 0.0;       // rad/s, +inf at zero density
  double delay_bandwidth = 0.0;
  double max_optical_density = 0.0;   // 1/A
  double best_delay_bandwidth = 0.0;  // S W / (2 sqrt(A))
};

PulseFigures pulse_figures(const ResonanceParams& res, double optical_density);

double optical_density(const Environment& env, const LevelScheme& scheme);

}  // namespace eitsim
