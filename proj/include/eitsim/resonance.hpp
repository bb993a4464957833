#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eitsim/constants.hpp"
#include "eitsim/curve.hpp"

namespace eitsim {

// Local expansion of the EIT notch:
// chi(center + d) ~ phase + slope*d + i*(absorption + d^2/width^2).
struct ResonanceParams {
  double center = 0.0;      // rad/s
  double phase = 0.0;       // Re chi at center
  double absorption = 0.0;  // Im chi at center
  double slope = 0.0;       // s
  double width = 0.0;       // rad/s
  double eit_ratio = 0.0;   // absorption over the no-pump value at center

  double no_pump_absorption = 0.0;
  double step = 0.0;        // finite-difference step used, rad/s
  int widenings = 0;
};

struct SearchSettings {
  double bracket_widths = 3.0;  // half-width of the first bracket in W_est
  int max_widenings = 2;
  double widening_factor = 3.0;
  int coarse_points = 41;
  int refine_points = 21;
  double step_fraction = 1.0 / 200.0;  // finite-difference step in W_est
  double fallback_width = kTwoPi * 10.0e3;
  double center_tolerance = 1.0e-7;    // golden-section stop, in W_est
  unsigned threads = 1;
  DopplerSettings doppler;
};

void validate(const SearchSettings& s);

// Generic extraction from a susceptibility function and its no-pump
// counterpart.
ResonanceParams characterize_resonance(const ChiFunction& chi, const ChiFunction& no_pump_chi,
                                       double center_guess, double width_guess,
                                       const SearchSettings& settings);

ResonanceParams characterize_resonance(const AtomicSystem& sys, const SearchSettings& settings = {});

// Search center s_res*B_z + pump detuning - AC Stark shift, and W_est.
double resonance_center_guess(const AtomicSystem& sys);
double resonance_width_guess(const AtomicSystem& sys, const SearchSettings& settings);

AtomicSystem without_pump(const AtomicSystem& sys);

struct FieldScanPoint {
  double bz = 0.0;
  std::optional<ResonanceParams> params;
  std::string error;
};

std::vector<FieldScanPoint> b_field_sensitivity_scan(const AtomicSystem& sys,
                                                     const std::vector<double>& fields_gauss,
                                                     const SearchSettings& settings);

}  // namespace eitsim
