#pragma once

#include <functional>

#include "eitsim/resonance.hpp"

namespace eitsim {

enum class FieldAverageMethod {
  Exact,         // pole expansion in B through the Faddeeva function
  GaussHermite,  // node doubling
};

struct GradientSettings {
  double derivative_step = 0.0;   // gauss; 0 selects (W_est/s_res)/50 clamped to [1e-4, 1]
  double derivative_tol = 0.01;   // agreement between successive Richardson values
  int max_step_reductions = 8;
  FieldAverageMethod average = FieldAverageMethod::Exact;
  int field_nodes = 32;
  int max_field_nodes = 256;
  double field_rel_tol = 1.0e-3;
  SearchSettings search;  // search.doppler: Exact is replaced by Trapezoid when S_B > 0
};

void validate(const GradientSettings& s);

using FieldResponse = std::function<CoherenceVector(double bz)>;

// d^2 rho / dB^2 at bz by central differences, refined once by Richardson and
// with the step halved until two successive refinements agree.
CoherenceVector rho_d2_dB(const FieldResponse& rho_of_b, double bz, double step,
                          const GradientSettings& settings = {});

CoherenceVector rho_d2_dB(const AtomicSystem& sys, double signal_detuning, double doppler_shift,
                          double step, const GradientSettings& settings = {});

// Closed form 2 M^-1 dM M^-1 dM rho, dM = dM/dB.
CoherenceVector rho_d2_dB_exact(const AtomicSystem& sys, double signal_detuning,
                                double doppler_shift);

double default_derivative_step(const AtomicSystem& sys, const SearchSettings& search);

// First-order diffusion correction for a gradient in gauss/m.
CoherenceVector perturbative_correction(const AtomicSystem& sys, double signal_detuning,
                                        double doppler_shift, double gradient);

struct FieldAveragingWidth {
  double width = 0.0;     // gauss
  bool fallback = false;  // norm ratio used instead of the rho31 component
};

FieldAveragingWidth delta_B(const AtomicSystem& sys, double signal_detuning, double doppler_shift,
                            double gradient);

CoherenceVector diffusion_averaged_rho(const AtomicSystem& sys, double signal_detuning,
                                       double doppler_shift, double gradient,
                                       const GradientSettings& settings = {});

// Doppler average of the field-averaged response.
cplx gradient_chi(const AtomicSystem& sys, double signal_detuning, double gradient,
                  const GradientSettings& settings = {});

ResonanceParams gradient_resonance(const AtomicSystem& sys, double gradient,
                                   const GradientSettings& settings = {});

SusceptibilityCurve gradient_curve(const AtomicSystem& sys, double gradient,
                                   std::vector<double> detunings, const GradientSettings& settings,
                                   unsigned threads);

}  // namespace eitsim
