#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "eitsim/doppler.hpp"

namespace eitsim {

using ChiFunction = std::function<cplx(double signal_detuning)>;

struct SusceptibilityCurve {
  std::vector<double> detunings;  // rad/s, strictly increasing
  std::vector<cplx> chi;
  std::optional<AtomicSystem> system;
  DopplerSettings quadrature;

  std::size_t size() const { return detunings.size(); }
  // Linear interpolation; throws SpectralCoverageError outside the sampled range.
  cplx interpolate(double detuning) const;
  // Throws ValidationError on unordered detunings or non-finite samples.
  void validate() const;
};

std::vector<double> linear_grid(double start, double stop, std::size_t count);

SusceptibilityCurve sample_curve(const ChiFunction& chi, std::vector<double> detunings,
                                 unsigned threads);

SusceptibilityCurve susceptibility_curve(const AtomicSystem& sys, std::vector<double> detunings,
                                         const DopplerSettings& settings, unsigned threads);

}  // namespace eitsim
