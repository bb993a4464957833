#include "eitsim/channel.hpp"

#include <cmath>

#include "eitsim/errors.hpp"
#include "eitsim/estimates.hpp"
#include "eitsim/parallel.hpp"

namespace eitsim {

namespace {

// Slope of the AC Stark shift with field, rad/s per gauss.
double ac_stark_field_slope(const AtomicSystem& sys) {
  if (!sys.scheme.has_level4 || sys.fields.pump_rabi == 0.0) return 0.0;
  AtomicSystem lo = sys, hi = sys;
  lo.fields.bz -= 1.0;
  hi.fields.bz += 1.0;
  return (analytic_estimates(hi).ac_stark_shift - analytic_estimates(lo).ac_stark_shift) / 2.0;
}

// Largest delta in (0, limit] with Re chi within tolerance of the linear
// expansion on both sides of the center.
double linear_region_bound(const ChiFunction& chi, const ResonanceParams& r, double limit,
                           const ChannelSettings& s, bool& active) {
  auto linear = [&](double d) {
    const double scale = std::abs(r.slope) * d;
    for (double sign : {-1.0, 1.0}) {
      const double dev = chi(r.center + sign * d).real() - r.phase - sign * r.slope * d;
      if (std::abs(dev) > s.linear_tolerance * scale) return false;
    }
    return true;
  };
  active = false;
  if (linear(limit)) return limit;
  active = true;
  double lo = 0.0, hi = limit;
  for (int k = 0; k < s.bisection_steps; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (linear(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

ChannelPerformance channel_performance(const AtomicSystem& sys, double gradient,
                                       const ChannelSettings& s) {
  if (!(gradient >= 0.0)) throw DomainError("gradient", "must be nonnegative");
  if (!(s.linear_tolerance > 0.0)) throw DomainError("linear_tolerance", "must be positive");
  AtomicSystem local = sys;
  local.fields.gradient = gradient;

  ChannelPerformance out;
  out.gradient = gradient;
  out.resonance = gradient_resonance(local, gradient, s.gradient);
  const double width_m = local.env.geometry.width;
  const double sres = local.scheme.resonance_slope();
  out.bandwidth = sres * gradient * width_m;

  double a = out.resonance.absorption;
  if (!(a > 0.0)) {
    const AnalyticEstimates est = analytic_estimates(local);
    a = est.absorption + est.offres_absorption + est.gradient_absorption;
    out.absorption_clamped = true;
    out.warnings.push_back("nonpositive numerical absorption clamped to the analytic value");
  }
  out.max_optical_density = 1.0 / (2.0 * a);
  out.local_bandwidth = out.resonance.width / std::sqrt(out.max_optical_density);
  const double absorption_limit = out.resonance.width / std::sqrt(2.0 * out.max_optical_density);

  const double slope = out.resonance.slope;
  out.closed_form_delay_bandwidth = out.resonance.width * slope / std::sqrt(2.0 * a);
  if (gradient == 0.0) {
    // No channelization: zero bandwidth and no mismatch to choose.
    out.max_mismatch = absorption_limit;
    return out;
  }

  auto chi = [&](double d) { return gradient_chi(local, d, gradient, s.gradient); };
  out.max_mismatch = linear_region_bound(chi, out.resonance, absorption_limit, s,
                                         out.linear_bound_active);
  out.resonance_slope = gradient * (sres - ac_stark_field_slope(local));
  out.dispersion_slope = out.resonance_slope + 2.0 * out.max_mismatch / width_m;
  out.edge_detuning = (out.dispersion_slope - out.resonance_slope) * 0.5 * width_m;
  out.effective_slope =
      (out.dispersion_slope - out.resonance_slope) / out.dispersion_slope * slope;
  out.max_delay = out.effective_slope * out.max_optical_density / 2.0;
  out.delay_bandwidth = out.max_delay * out.bandwidth;
  out.closed_form_effective_slope = slope * std::sqrt(2.0 * a) * out.resonance.width / out.bandwidth;
  return out;
}

PressureScan pressure_scan(const LevelScheme& scheme, const EnvironmentInputs& inputs,
                           const FieldConfig& fields, double gradient,
                           const std::vector<double>& pressures, const ChannelSettings& s,
                           unsigned threads) {
  if (pressures.empty()) throw DomainError("pressures", "list is empty");
  for (double p : pressures)
    if (!(p > 0.0)) throw DomainError("pressures", "must be positive");
  ChannelSettings inner = s;
  inner.gradient.search.threads = 1;
  PressureScan scan;
  scan.points = parallel_map(pressures.size(), std::max(1u, threads), [&](std::size_t i) {
    PressurePoint pt;
    pt.pressure = pressures[i];
    try {
      AtomicSystem sys{scheme,
                       derive_environment(inputs.temperature, pt.pressure, inputs.density,
                                          inputs.geometry),
                       fields};
      pt.performance = channel_performance(sys, gradient, inner);
    } catch (const PhysicsError& e) {
      pt.error = e.what();
    }
    return pt;
  });
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const auto& p = scan.points[i].performance;
    if (!p) continue;
    if (!scan.best || p->delay_bandwidth > scan.points[*scan.best].performance->delay_bandwidth)
      scan.best = i;
  }
  return scan;
}

}  // namespace eitsim
