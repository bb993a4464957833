#pragma once

#include <functional>

#include "eitsim/evolution.hpp"

namespace eitsim {

enum class DopplerMethod {
  Exact,         // closed form through the Faddeeva function, trapezoid fallback
  Trapezoid,     // Gaussian-weighted trapezoid, step halving
  GaussHermite,  // node doubling
};

struct DopplerSettings {
  DopplerMethod method = DopplerMethod::Exact;
  int min_nodes = 64;
  int max_nodes = 1 << 18;  // trapezoid cap; Gauss-Hermite caps at 512
  double rel_tol = 1.0e-3;
  double abs_tol = 1.0e-13;
  double span = 6.5;  // integration half-range in Doppler widths
};

void validate(const DopplerSettings& s);

using VelocityResponse = std::function<cplx(double doppler_shift)>;

// Normalized Gaussian average of f over the Doppler distribution of width
// doppler_width. feature_width sets the initial trapezoid step (half of it).
// Throws QuadratureError when the refinement cap is reached.
cplx doppler_average(const VelocityResponse& f, double doppler_width, double feature_width,
                     const DopplerSettings& settings);

cplx doppler_averaged_chi(const AtomicSystem& sys, double signal_detuning,
                          const DopplerSettings& settings = {});

// Closed-form average. Returns false when the pole expansion is unreliable
// (dark-state two-photon term or nearly defective eigenbasis).
bool doppler_averaged_chi_exact(const AtomicSystem& sys, double signal_detuning, cplx& out);

}  // namespace eitsim
