#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "eitsim/curve.hpp"
#include "eitsim/resonance.hpp"

namespace eitsim {

struct TimeGrid {
  double start = 0.0;  // s
  double step = 0.0;   // s
  std::size_t count = 0;

  double time(std::size_t i) const { return start + step * static_cast<double>(i); }
  double span() const { return step * static_cast<double>(count); }
};

struct TimeSeries {
  TimeGrid grid;
  std::vector<std::complex<double>> envelope;
};

// Power-of-two grid containing t = 0 on a sample, wide enough for a pulse of
// half-width tau delayed by expected_delay and broadened to expected_width,
// zero-padded to four times the occupied support.
TimeGrid make_pulse_grid(double tau, double expected_delay = 0.0, double expected_width = 0.0,
                         int samples_per_tau = 16);

// exp(-t^2/(2 tau^2)): intensity falls to 1/e at |t| = tau.
TimeSeries gaussian_pulse(double tau, const TimeGrid& grid);

struct PropagationOptions {
  double carrier_detuning = 0.0;  // rad/s, signal detuning of the pulse carrier
  bool include_c_term = false;    // free-space phase delta*l_cell/c
  double cell_length = 0.0;       // m
  double band_threshold = 1.0e-10;  // relative spectral amplitude defining the occupied band
};

// Multiplies each spectral component by exp(i D chi(carrier + delta)/2).
// Throws SpectralCoverageError when the curve does not cover the occupied band.
TimeSeries propagate(const TimeSeries& pulse, double optical_density,
                     const SusceptibilityCurve& chi, const PropagationOptions& options = {});

TimeSeries propagate(const TimeSeries& pulse, double optical_density, const ChiFunction& chi,
                     const PropagationOptions& options = {});

struct PulseMetrics {
  double delay = 0.0;           // s, intensity peak shift
  double centroid_delay = 0.0;  // s
  double transmission = 0.0;    // peak intensity ratio
  double width_in = 0.0;        // s, 1/e intensity half-width
  double width_out = 0.0;       // s
  double broadening_ratio = 0.0;
  double energy_ratio = 0.0;
};

PulseMetrics measure_pulse(const TimeSeries& in, const TimeSeries& out);

// Parabolic model of the notch around its center.
cplx quadratic_model_chi(const ResonanceParams& res, double signal_detuning);

// Requires at least 20 samples across [center - width, center + width].
void validate_curve_sampling(const SusceptibilityCurve& curve, double center, double width);

}  // namespace eitsim
