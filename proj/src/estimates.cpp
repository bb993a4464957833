#include "eitsim/estimates.hpp"

#include <cmath>
#include <limits>

#include "eitsim/errors.hpp"
#include "eitsim/resonance.hpp"

namespace eitsim {

AnalyticEstimates analytic_estimates(const AtomicSystem& sys) {
  const double omega = sys.fields.pump_rabi;
  if (!(omega > 0.0)) throw DomainError("pump_rabi", "must be positive for analytic estimates");
  const double gamma = kRb87.radiative_decay;
  const double ge = sys.env.gamma_e;
  const double o2 = omega * omega;
  const LevelScheme& s = sys.scheme;
  const double split = shifted_detunings(s, sys.fields, 0.0, sys.env.pressure).excited_splitting;
  const double lorentz = 4.0 * (split * split + ge * ge);
  const double sres = s.resonance_slope();
  const double sb = sys.fields.gradient;

  AnalyticEstimates e;
  e.absorption = 2.0 * sys.env.gamma_diff * gamma / o2;
  e.slope = 2.0 * gamma / o2;
  e.width = o2 / std::sqrt(8.0 * ge * gamma);
  const double db = s.beta14 - s.beta24;
  e.offres_absorption = db * db * ge * gamma / lorentz;
  e.ac_stark_shift = s.beta24 * (s.beta24 - s.beta14) * o2 * ge / lorentz;
  e.gradient_absorption = 64.0 * (sys.env.diffusion_constant / 3.0) * sb * sb * sres * sres *
                          gamma * ge * ge / (o2 * o2 * o2);
  return e;
}

PulseFigures pulse_figures(const ResonanceParams& res, double d) {
  if (!(d >= 0.0)) throw DomainError("optical_density", "must be nonnegative");
  PulseFigures f;
  f.optical_density = d;
  f.delay = res.slope * d / 2.0;
  f.loss = -std::expm1(-res.absorption * d);
  f.bandwidth = d > 0.0 ? res.width / std::sqrt(d) : std::numeric_limits<double>::infinity();
  f.delay_bandwidth = d > 0.0 ? f.delay * f.bandwidth : 0.0;
  f.max_optical_density =
      res.absorption > 0.0 ? 1.0 / res.absorption : std::numeric_limits<double>::infinity();
  f.best_delay_bandwidth = res.absorption > 0.0
                               ? res.slope * res.width / (2.0 * std::sqrt(res.absorption))
                               : std::numeric_limits<double>::infinity();
  return f;
}

double optical_density(const Environment& env, const LevelScheme& scheme) {
  return scheme.f13 * env.density * kRb87.unity_cross_section() * env.geometry.cell_length;
}

}  // namespace eitsim
