#include "eitsim/resonance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "eitsim/errors.hpp"
#include "eitsim/estimates.hpp"
#include "eitsim/parallel.hpp"

namespace eitsim {

namespace {

std::size_t argmin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

std::vector<double> sample_imag(const ChiFunction& chi, const std::vector<double>& grid,
                                unsigned threads) {
  return parallel_map(grid.size(), threads, [&](std::size_t i) { return chi(grid[i]).imag(); });
}

std::string mhz(double w) {
  std::ostringstream os;
  os << rad_s_to_mhz(w) << " MHz";
  return os.str();
}

// Golden-section search for the minimum of f on [a, b].
double golden_minimum(const std::function<double(double)>& f, double a, double b, double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace

void validate(const SearchSettings& s) {
  if (!(s.bracket_widths > 0.0)) throw DomainError("bracket_widths", "must be positive");
  if (s.max_widenings < 0) throw DomainError("max_widenings", "must be nonnegative");
  if (!(s.widening_factor > 1.0)) throw DomainError("widening_factor", "must exceed 1");
  if (s.coarse_points < 5) throw DomainError("coarse_points", "must be at least 5");
  if (s.refine_points < 5) throw DomainError("refine_points", "must be at least 5");
  if (!(s.step_fraction > 0.0)) throw DomainError("step_fraction", "must be positive");
  if (!(s.fallback_width > 0.0)) throw DomainError("fallback_width", "must be positive");
  if (!(s.center_tolerance > 0.0)) throw DomainError("center_tolerance", "must be positive");
  validate(s.doppler);
}

ResonanceParams characterize_resonance(const ChiFunction& chi, const ChiFunction& no_pump_chi,
                                       double center_guess, double width_guess,
                                       const SearchSettings& s) {
  validate(s);
  if (!(width_guess > 0.0)) throw DomainError("width_guess", "must be positive");
  const unsigned threads = std::max(1u, s.threads);

  double half = s.bracket_widths * width_guess;
  int widenings = 0;
  std::vector<double> grid;
  std::size_t k = 0;
  while (true) {
    grid = linear_grid(center_guess - half, center_guess + half,
                       static_cast<std::size_t>(s.coarse_points));
    k = argmin(sample_imag(chi, grid, threads));
    if (k > 0 && k + 1 < grid.size()) break;
    if (widenings == s.max_widenings) {
      throw ResonanceError("no minimum of Im chi inside the bracket " + mhz(center_guess) +
                           " +/- " + mhz(half) + " after " + std::to_string(widenings) +
                           " widenings");
    }
    half *= s.widening_factor;
    ++widenings;
  }

  std::vector<double> fine =
      linear_grid(grid[k - 1], grid[k + 1], static_cast<std::size_t>(s.refine_points));
  const std::size_t j = argmin(sample_imag(chi, fine, threads));
  const double a = fine[j == 0 ? 0 : j - 1];
  const double b = fine[std::min(j + 1, fine.size() - 1)];
  const double center = golden_minimum([&](double d) { return chi(d).imag(); }, a, b,
                                       s.center_tolerance * width_guess);

  const double h = s.step_fraction * width_guess;
  const std::array<double, 7> offsets = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  const auto values = parallel_map(offsets.size(), threads,
                                   [&](std::size_t i) { return chi(center + offsets[i] * h); });
  const cplx m2 = values[0], m1 = values[1], mh = values[2], c0 = values[3], ph = values[4],
             p1 = values[5], p2 = values[6];

  const double slope_h = (p1.real() - m1.real()) / (2.0 * h);
  const double slope_h2 = (ph.real() - mh.real()) / h;
  const double slope = (4.0 * slope_h2 - slope_h) / 3.0;

  auto five_point = [](double fm2, double fm1, double f0, double fp1, double fp2, double step) {
    return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * step * step);
  };
  const double curv_h = five_point(m2.imag(), m1.imag(), c0.imag(), p1.imag(), p2.imag(), h);
  const double curv_h2 = five_point(m1.imag(), mh.imag(), c0.imag(), ph.imag(), p1.imag(), 0.5 * h);
  const double curvature = (16.0 * curv_h2 - curv_h) / 15.0;
  if (!(curvature > 0.0)) {
    std::ostringstream os;
    os << "nonpositive curvature " << curvature << " s^2 at center " << mhz(center)
       << " (Im chi = " << c0.imag() << ")";
    throw ResonanceError(os.str());
  }

  ResonanceParams r;
  r.center = center;
  r.phase = c0.real();
  r.absorption = c0.imag();
  r.slope = slope;
  r.width = std::sqrt(2.0 / curvature);
  r.no_pump_absorption = no_pump_chi(center).imag();
  r.eit_ratio = r.no_pump_absorption != 0.0 ? r.absorption / r.no_pump_absorption : 0.0;
  r.step = h;
  r.widenings = widenings;
  return r;
}

double resonance_center_guess(const AtomicSystem& sys) {
  double center = sys.scheme.resonance_slope() * sys.fields.bz + sys.fields.pump_detuning;
  if (sys.fields.pump_rabi > 0.0) center -= analytic_estimates(sys).ac_stark_shift;
  return center;
}

double resonance_width_guess(const AtomicSystem& sys, const SearchSettings& s) {
  if (sys.fields.pump_rabi > 0.0) return analytic_estimates(sys).width;
  return s.fallback_width;
}

AtomicSystem without_pump(const AtomicSystem& sys) {
  AtomicSystem copy = sys;
  copy.fields.pump_rabi = 0.0;
  return copy;
}

ResonanceParams characterize_resonance(const AtomicSystem& sys, const SearchSettings& s) {
  const double o = sys.fields.pump_rabi;
  if (!(o * o > sys.env.gamma_diff * sys.env.gamma_e))
    throw DomainError("pump_rabi", "too weak for an EIT resonance (Omega_p^2 <= gamma_diff*gamma_e)");
  const AtomicSystem bare = without_pump(sys);
  auto chi = [&](double d) { return doppler_averaged_chi(sys, d, s.doppler); };
  auto no_pump = [&](double d) { return doppler_averaged_chi(bare, d, s.doppler); };
  return characterize_resonance(chi, no_pump, resonance_center_guess(sys),
                                resonance_width_guess(sys, s), s);
}

std::vector<FieldScanPoint> b_field_sensitivity_scan(const AtomicSystem& sys,
                                                     const std::vector<double>& fields_gauss,
                                                     const SearchSettings& s) {
  if (fields_gauss.empty()) throw DomainError("fields", "scan range is empty");
  SearchSettings inner = s;
  inner.threads = 1;
  return parallel_map(fields_gauss.size(), std::max(1u, s.threads), [&](std::size_t i) {
    FieldScanPoint p;
    p.bz = fields_gauss[i];
    AtomicSystem local = sys;
    local.fields.bz = p.bz;
    try {
      p.params = characterize_resonance(local, inner);
    } catch (const PhysicsError& e) {
      p.error = e.what();
    }
    return p;
  });
}

}  // namespace eitsim
