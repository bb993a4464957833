#include "eitsim/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include <fftw3.h>

#include "eitsim/constants.hpp"
#include "eitsim/errors.hpp"

namespace eitsim {

namespace {

constexpr double kEdgeFraction = 1.0e-6;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place unnormalized DFT; sign follows FFTW (FFTW_FORWARD = -1).
void dft(std::vector<cplx>& data, int sign) {
  const int n = static_cast<int>(data.size());
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

double angular_frequency(std::size_t k, std::size_t n, double step) {
  const double index = k <= n / 2 ? static_cast<double>(k)
                                  : static_cast<double>(k) - static_cast<double>(n);
  return kTwoPi * index / (static_cast<double>(n) * step);
}

void validate_series(const TimeSeries& s) {
  if (!power_of_two(s.grid.count)) throw ValidationError("time grid length must be a power of two");
  if (!(s.grid.step > 0.0)) throw ValidationError("time grid step must be positive");
  if (s.envelope.size() != s.grid.count)
    throw ValidationError("envelope length does not match the time grid");
}

template <class Transfer>
TimeSeries propagate_with(const TimeSeries& pulse, double optical_density, Transfer&& chi_of,
                          const PropagationOptions& o,
                          const std::function<void(double, double)>& coverage) {
  validate_series(pulse);
  if (!(optical_density >= 0.0)) throw DomainError("optical_density", "must be nonnegative");
  const std::size_t n = pulse.grid.count;
  std::vector<cplx> spec = pulse.envelope;
  dft(spec, FFTW_BACKWARD);  // sum e(t) exp(+i delta t)

  double peak = 0.0;
  for (const auto& v : spec) peak = std::max(peak, std::abs(v));
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(spec[k]) < o.band_threshold * peak) continue;
    const double d = angular_frequency(k, n, pulse.grid.step);
    lo = any ? std::min(lo, d) : d;
    hi = any ? std::max(hi, d) : d;
    any = true;
  }
  if (any) coverage(o.carrier_detuning + lo, o.carrier_detuning + hi);

  const cplx i{0.0, 1.0};
  for (std::size_t k = 0; k < n; ++k) {
    double d = angular_frequency(k, n, pulse.grid.step);
    // Components outside the occupied band carry negligible weight; they see
    // the response at the nearest band edge.
    if (any) d = std::clamp(d, lo, hi);
    cplx phase = i * optical_density * chi_of(o.carrier_detuning + d) / 2.0;
    if (o.include_c_term) phase += i * angular_frequency(k, n, pulse.grid.step) * o.cell_length / kSpeedOfLight;
    spec[k] *= std::exp(phase);
  }
  dft(spec, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : spec) v *= scale;

  double out_peak = 0.0;
  for (const auto& v : spec) out_peak = std::max(out_peak, std::abs(v));
  const double edge = std::max(std::abs(spec.front()), std::abs(spec.back()));
  if (out_peak > 0.0 && edge > kEdgeFraction * out_peak) {
    std::ostringstream os;
    os << "propagated pulse reaches the time window edge (edge/peak = " << edge / out_peak
       << "); widen the grid or sample the susceptibility more finely";
    throw WraparoundError(os.str());
  }
  return TimeSeries{pulse.grid, std::move(spec)};
}

double log_peak_offset(double lm, double l0, double lp) {
  const double denom = lm - 2.0 * l0 + lp;
  if (denom >= 0.0) return 0.0;
  return 0.5 * (lm - lp) / denom;
}

struct PeakInfo {
  double time = 0.0;
  double intensity = 0.0;
  std::size_t index = 0;
};

PeakInfo find_peak(const TimeSeries& s) {
  const std::size_t n = s.envelope.size();
  std::size_t k = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::norm(s.envelope[i]);
    if (v > best) {
      best = v;
      k = i;
    }
  }
  if (!(best > 0.0)) throw MeasurementError("signal has no peak (identically zero)");
  double lowest = best;
  for (const auto& v : s.envelope) lowest = std::min(lowest, std::norm(v));
  if (lowest >= best) throw MeasurementError("signal has no peak (flat intensity)");

  PeakInfo p{s.grid.time(k), best, k};
  if (k > 0 && k + 1 < n) {
    const double im = std::norm(s.envelope[k - 1]);
    const double ip = std::norm(s.envelope[k + 1]);
    if (im > 0.0 && ip > 0.0) {
      const double lm = std::log(im), l0 = std::log(best), lp = std::log(ip);
      const double off = log_peak_offset(lm, l0, lp);
      p.time = s.grid.time(k) + off * s.grid.step;
      const double a = 0.5 * (lm - 2.0 * l0 + lp);
      const double b = 0.5 * (lp - lm);
      p.intensity = std::exp(l0 + b * off + a * off * off);
    }
  }
  return p;
}

// 1/e intensity half-width from linearly interpolated crossings.
double half_width(const TimeSeries& s, const PeakInfo& p) {
  const double level = p.intensity / std::exp(1.0);
  const std::size_t n = s.envelope.size();
  auto crossing = [&](int dir) {
    std::size_t i = p.index;
    while (true) {
      const std::size_t j = dir > 0 ? i + 1 : i - 1;
      if ((dir > 0 && j >= n) || (dir < 0 && i == 0))
        throw MeasurementError("1/e intensity crossing lies outside the time window");
      const double vi = std::norm(s.envelope[i]);
      const double vj = std::norm(s.envelope[j]);
      if (vj < level) {
        const double t = (vi - level) / (vi - vj);
        return s.grid.time(i) + dir * t * s.grid.step;
      }
      i = j;
    }
  };
  return 0.5 * (crossing(1) - crossing(-1));
}

double centroid(const TimeSeries& s) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < s.envelope.size(); ++i) {
    const double v = std::norm(s.envelope[i]);
    num += v * s.grid.time(i);
    den += v;
  }
  return den > 0.0 ? num / den : 0.0;
}

double energy(const TimeSeries& s) {
  double e = 0.0;
  for (const auto& v : s.envelope) e += std::norm(v);
  return e * s.grid.step;
}

}  // namespace

TimeGrid make_pulse_grid(double tau, double expected_delay, double expected_width,
                         int samples_per_tau) {
  if (!(tau > 0.0)) throw DomainError("tau", "must be positive");
  if (samples_per_tau < 10) throw DomainError("samples_per_tau", "must be at least 10");
  const double width = std::max(tau, expected_width);
  const double occupied = 12.0 * width + std::abs(expected_delay);
  const double span = 4.0 * occupied;
  const double step = tau / samples_per_tau;
  std::size_t count = 1;
  while (static_cast<double>(count) * step < span) count <<= 1;
  // Centre the window between input and delayed output, with t = 0 on a sample.
  const double mid = 0.5 * expected_delay;
  TimeGrid g;
  g.step = step;
  g.count = count;
  g.start = -std::round((0.5 * span - mid) / step) * step;
  return g;
}

TimeSeries gaussian_pulse(double tau, const TimeGrid& grid) {
  if (!(tau > 0.0)) throw DomainError("tau", "must be positive");
  if (!power_of_two(grid.count)) throw ValidationError("time grid length must be a power of two");
  if (!(grid.step > 0.0)) throw ValidationError("time grid step must be positive");
  if (grid.step > tau / 10.0) throw ValidationError("time grid step exceeds tau/10");
  if (grid.span() < 12.0 * tau) throw ValidationError("time grid spans less than 12 tau");
  const double end = grid.time(grid.count - 1);
  if (grid.start > -6.0 * tau || end < 6.0 * tau)
    throw ValidationError("time grid must extend at least 6 tau on both sides of t = 0");
  TimeSeries s;
  s.grid = grid;
  s.envelope.resize(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double t = grid.time(i);
    s.envelope[i] = std::exp(-t * t / (2.0 * tau * tau));
  }
  return s;
}

TimeSeries propagate(const TimeSeries& pulse, double optical_density,
                     const SusceptibilityCurve& chi, const PropagationOptions& options) {
  chi.validate();
  auto coverage = [&](double lo, double hi) {
    if (chi.detunings.empty() || lo < chi.detunings.front() || hi > chi.detunings.back()) {
      std::ostringstream os;
      os << "susceptibility curve does not cover the pulse band [" << rad_s_to_mhz(lo) << ", "
         << rad_s_to_mhz(hi) << "] MHz";
      throw SpectralCoverageError(os.str(), lo, hi);
    }
  };
  return propagate_with(
      pulse, optical_density, [&](double d) { return chi.interpolate(d); }, options, coverage);
}

TimeSeries propagate(const TimeSeries& pulse, double optical_density, const ChiFunction& chi,
                     const PropagationOptions& options) {
  return propagate_with(pulse, optical_density, chi, options, [](double, double) {});
}

PulseMetrics measure_pulse(const TimeSeries& in, const TimeSeries& out) {
  if (in.grid.count != out.grid.count || in.grid.step != out.grid.step ||
      in.grid.start != out.grid.start || in.envelope.size() != out.envelope.size())
    throw ValidationError("input and output pulses must share a time grid");
  const PeakInfo pi = find_peak(in);
  const PeakInfo po = find_peak(out);
  PulseMetrics m;
  m.delay = po.time - pi.time;
  m.centroid_delay = centroid(out) - centroid(in);
  m.transmission = po.intensity / pi.intensity;
  m.width_in = half_width(in, pi);
  m.width_out = half_width(out, po);
  m.broadening_ratio = m.width_in > 0.0 ? m.width_out / m.width_in : 0.0;
  m.energy_ratio = energy(out) / energy(in);
  return m;
}

cplx quadratic_model_chi(const ResonanceParams& r, double signal_detuning) {
  const double d = signal_detuning - r.center;
  return cplx(r.phase + r.slope * d, r.absorption + d * d / (r.width * r.width));
}

void validate_curve_sampling(const SusceptibilityCurve& curve, double center, double width) {
  std::size_t inside = 0;
  for (double d : curve.detunings)
    if (d >= center - width && d <= center + width) ++inside;
  if (inside < 20) {
    std::ostringstream os;
    os << "susceptibility curve has " << inside
       << " samples across the resonance notch; at least 20 are required";
    throw ValidationError(os.str());
  }
}

}  // namespace eitsim
