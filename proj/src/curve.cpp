#include "eitsim/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eitsim/errors.hpp"
#include "eitsim/parallel.hpp"

namespace eitsim {

cplx SusceptibilityCurve::interpolate(double detuning) const {
  if (detunings.empty()) throw SpectralCoverageError("empty susceptibility curve", detuning, detuning);
  if (detuning < detunings.front() || detuning > detunings.back()) {
    throw SpectralCoverageError("detuning " + std::to_string(detuning) +
                                    " rad/s outside the sampled curve",
                                detuning, detuning);
  }
  const auto it = std::upper_bound(detunings.begin(), detunings.end(), detuning);
  if (it == detunings.end()) return chi.back();
  const std::size_t hi = static_cast<std::size_t>(it - detunings.begin());
  const std::size_t lo = hi - 1;
  const double t = (detuning - detunings[lo]) / (detunings[hi] - detunings[lo]);
  return chi[lo] + t * (chi[hi] - chi[lo]);
}

void SusceptibilityCurve::validate() const {
  if (detunings.size() != chi.size())
    throw ValidationError("susceptibility curve: detuning and chi sizes differ");
  for (std::size_t i = 0; i < detunings.size(); ++i) {
    if (!std::isfinite(detunings[i]) || !std::isfinite(chi[i].real()) ||
        !std::isfinite(chi[i].imag()))
      throw ValidationError("susceptibility curve: non-finite sample at index " + std::to_string(i));
    if (i > 0 && !(detunings[i] > detunings[i - 1]))
      throw ValidationError("susceptibility curve: detunings not strictly increasing at index " +
                            std::to_string(i));
  }
}

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
  if (count == 0) throw DomainError("count", "must be positive");
  if (count == 1) return {start};
  if (!(stop > start)) throw DomainError("range", "stop must exceed start");
  std::vector<double> g(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = start + step * static_cast<double>(i);
  g.back() = stop;
  return g;
}

SusceptibilityCurve sample_curve(const ChiFunction& chi, std::vector<double> detunings,
                                 unsigned threads) {
  SusceptibilityCurve c;
  c.chi = parallel_map(detunings.size(), threads, [&](std::size_t i) { return chi(detunings[i]); });
  c.detunings = std::move(detunings);
  c.validate();
  return c;
}

SusceptibilityCurve susceptibility_curve(const AtomicSystem& sys, std::vector<double> detunings,
                                         const DopplerSettings& settings, unsigned threads) {
  auto c = sample_curve(
      [&](double d) { return doppler_averaged_chi(sys, d, settings); }, std::move(detunings),
      threads);
  c.system = sys;
  c.quadrature = settings;
  return c;
}

}  // namespace eitsim
