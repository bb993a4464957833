#include <doctest.h>

#include "eitsim/curve.hpp"
#include "eitsim/doppler.hpp"
#include "eitsim/errors.hpp"
#include "eitsim/estimates.hpp"
#include "eitsim/faddeeva.hpp"
#include "eitsim/quadrature.hpp"
#include "eitsim/resonance.hpp"
#include "support.hpp"

using namespace eitsim;
using namespace eitsim::testing;

namespace {

struct FaddeevaRef {
  double x, y, re, im;
};

// 30-digit references, frozen from an arbitrary-precision evaluation.
constexpr FaddeevaRef kFaddeevaRefs[] = {
    {0, 0, 1.0, 0.0},
    {0.5, 0.5, 0.53315670791217491377, 0.23048823138445840871},
    {1, 1e-06, 0.36787952710731902983, 0.60715697008303260745},
    {2.5, 0.01, 0.0032305576565929813052, 0.25161914586681913674},
    {-2.5, 0.01, 0.0032305576565929813052, -0.25161914586681913674},
    {0.4, 6.8e-06, 0.85213832548550042248, 0.4061480907185768084},
    {-6.77, 1.1e-06, 1.4010056514460963464e-8, -0.08427736943195096815},
    {6.9, 0.2, 0.0024467326386878292435, 0.082580573310951671429},
    {7.5, 1e-05, 1.0310197543111051173e-7, 0.075912624309101494695},
    {12, 3, 0.011163889644607902579, 0.044361237994963507751},
    {0, 10, 0.056140992743822585858, 0.0},
    {3, 5, 0.082987737976901724069, 0.048389365202913091158},
    {-20, 0.5, 0.00070745221988472956216, -0.028227120903787738529},
    {100, 0.001, 5.6427423309335898489e-8, 0.0056421779720297788687},
    {0.001, 0.001, 0.99887162233541124713, 0.0011263806715998664529},
    {5.5, 0.0, 7.2877240958196924193e-14, 0.10436743643678120788},
    {0.2, 1.5, 0.3185606584623317737, 0.032462774574885026285},
    {-1.3, 2.7, 0.16658205710283170191, -0.072742443978324016224},
};

// Dense trapezoid over +-8 Doppler widths calling the single-velocity solver.
cplx brute_force_doppler(const AtomicSystem& sys, double signal, int nodes = 400001) {
  const double w = sys.env.doppler_width;
  const double h = 16.0 * w / (nodes - 1);
  cplx sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double x = -8.0 * w + k * h;
    sum += std::exp(-(x / w) * (x / w)) * chi_at(sys, signal, x);
  }
  return sum * h / (std::sqrt(std::numbers::pi) * w);
}

}  // namespace

TEST_CASE("faddeeva against high-precision references") {
  for (const auto& r : kFaddeevaRefs) {
    const cplx w = faddeeva({r.x, r.y});
    INFO("z = " << r.x << " + " << r.y << "i");
    CHECK(std::abs(w - cplx(r.re, r.im)) <= 1e-13 * std::abs(cplx(r.re, r.im)));
  }
}

TEST_CASE("faddeeva reflection into the lower half plane") {
  for (cplx z : {cplx(0.3, 0.7), cplx(-2.0, 1.1), cplx(4.0, 0.05), cplx(9.0, 2.0)}) {
    const cplx lhs = faddeeva(-z);
    const cplx rhs = 2.0 * std::exp(-z * z) - faddeeva(z);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
  }
}

TEST_CASE("gaussian pole average against quadrature") {
  const double width = 2.0;
  for (cplx pole : {cplx(0.5, 0.3), cplx(-1.0, -0.2), cplx(4.0, 0.01), cplx(0.0, -5.0)}) {
    cplx sum = 0.0;
    const int n = 2000001;
    const double h = 24.0 * width / (n - 1);
    for (int k = 0; k < n; ++k) {
      const double x = -12.0 * width + k * h + 1.0;
      const double g = std::exp(-((x - 1.0) / width) * ((x - 1.0) / width));
      sum += g / (x - pole);
    }
    sum *= h / (std::sqrt(std::numbers::pi) * width);
    CHECK(std::abs(gaussian_pole_average(pole, 1.0, width) - sum) <= 1e-7 * std::abs(sum));
  }
  CHECK_THROWS_AS(gaussian_pole_average(cplx(1.0, 0.0), 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gaussian_pole_average(cplx(1.0, 1.0), 0.0, 0.0), DomainError);
}

TEST_CASE("gauss-hermite rules") {
  for (int n : {2, 8, 32, 64}) {
    const GaussHermiteRule r = gauss_hermite(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double w = 0.0, m2 = 0.0, m4 = 0.0, m3 = 0.0;
    for (int k = 0; k < n; ++k) {
      w += r.weights[k];
      m2 += r.weights[k] * r.nodes[k] * r.nodes[k];
      m3 += r.weights[k] * std::pow(r.nodes[k], 3);
      m4 += r.weights[k] * std::pow(r.nodes[k], 4);
    }
    CHECK(w == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(m3) < 1e-12);
    if (n > 2) CHECK(m4 == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("doppler average methods agree with brute force") {
  for (auto [id, p] : {std::pair{SchemeId::A, 2.0}, std::pair{SchemeId::B, 15.0}}) {
    const AtomicSystem sys = make_system(id, p);
    for (double d : {-3.0, -0.1, 0.0, 0.4, 50.0}) {
      const cplx ref = brute_force_doppler(sys, mhz(d));
      INFO("scheme " << to_string(id) << " detuning " << d << " MHz");
      DopplerSettings s;
      s.method = DopplerMethod::Exact;
      CHECK(rel_diff(doppler_averaged_chi(sys, mhz(d), s), ref) < 1e-8);
      s.method = DopplerMethod::Trapezoid;
      CHECK(rel_diff(doppler_averaged_chi(sys, mhz(d), s), ref) < 1e-3);
      s.method = DopplerMethod::GaussHermite;
      if (id == SchemeId::A) {
        // 512 nodes cannot resolve a 13 MHz line under a 320 MHz Gaussian.
        CHECK_THROWS_AS(doppler_averaged_chi(sys, mhz(d), s), QuadratureError);
      } else {
        CHECK(rel_diff(doppler_averaged_chi(sys, mhz(d), s), ref) < 1e-2);
      }
    }
  }
}

TEST_CASE("exact doppler average declines a dark two-photon term") {
  AtomicSystem sys = make_system(SchemeId::B, 15.0);
  sys.env.gamma_diff = 0.0;
  cplx out;
  CHECK_FALSE(doppler_averaged_chi_exact(sys, 0.0, out));
  // The dispatcher falls back to the trapezoid.
  CHECK(std::isfinite(std::abs(doppler_averaged_chi(sys, 0.0))));
}

TEST_CASE("doppler average reduces to a single velocity for a cold vapor") {
  AtomicSystem sys = make_system(SchemeId::A, 2.0);
  sys.env.temperature *= 1e-6;
  sys.env.doppler_width = doppler_width(sys.env.temperature);
  for (double d : {-1.0, 0.0, 0.5}) {
    const cplx single = chi_at(sys, mhz(d), 0.0);
    DopplerSettings s;
    s.method = DopplerMethod::Trapezoid;
    CHECK(rel_diff(doppler_averaged_chi(sys, mhz(d), s), single) < 5e-3);
  }
}

TEST_CASE("doppler settings and convergence failures") {
  DopplerSettings s;
  s.min_nodes = 8;
  CHECK_THROWS_AS(validate(s), DomainError);
  s = {};
  s.method = DopplerMethod::Trapezoid;
  s.max_nodes = 64;
  s.rel_tol = 1e-14;
  s.abs_tol = 0.0;
  const AtomicSystem sys = make_system(SchemeId::A, 2.0);
  CHECK_THROWS_AS(doppler_averaged_chi(sys, 0.0, s), QuadratureError);
  CHECK_THROWS_AS(doppler_average([](double) { return cplx(1.0); }, 0.0, 1.0, DopplerSettings{}),
                  DomainError);
}

TEST_CASE("no-pump profile of scheme A shows the second excited level") {
  const AtomicSystem sys = without_pump(make_system(SchemeId::A, 3.0));
  double best = 0.0, best_d = 0.0;
  for (double d = 600.0; d <= 1000.0; d += 2.0) {
    const double a = doppler_averaged_chi(sys, mhz(d)).imag();
    if (a > best) {
      best = a;
      best_d = d;
    }
  }
  CHECK(best_d > 790.0);
  CHECK(best_d < 840.0);
  CHECK(best > doppler_averaged_chi(sys, mhz(450.0)).imag());
}

TEST_CASE("susceptibility curves") {
  const auto grid = linear_grid(-1.0, 1.0, 5);
  CHECK(grid == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 3), DomainError);

  const ChiFunction f = [](double d) { return cplx(d, d * d); };
  const SusceptibilityCurve c1 = sample_curve(f, linear_grid(-2.0, 2.0, 101), 1);
  const SusceptibilityCurve c4 = sample_curve(f, linear_grid(-2.0, 2.0, 101), 4);
  CHECK(c1.chi == c4.chi);
  CHECK(std::abs(c1.interpolate(0.48) - cplx(0.48, 0.48 * 0.48)) < 1e-15);
  CHECK(c1.interpolate(0.5).imag() == doctest::Approx(0.5 * (0.48 * 0.48 + 0.52 * 0.52)));
  CHECK(c1.interpolate(0.51).real() == doctest::Approx(0.51));
  CHECK_THROWS_AS(c1.interpolate(2.5), SpectralCoverageError);

  const AtomicSystem sys = make_system(SchemeId::B, 15.0);
  const auto s1 = susceptibility_curve(sys, linear_grid(mhz(-3.0), mhz(3.0), 41), {}, 1);
  const auto s3 = susceptibility_curve(sys, linear_grid(mhz(-3.0), mhz(3.0), 41), {}, 3);
  CHECK(s1.chi == s3.chi);
  CHECK_NOTHROW(s1.validate());
}

TEST_CASE("resonance of scheme A at 2 Torr") {
  const ResonanceParams r = characterize_resonance(make_system(SchemeId::A, 2.0));
  CHECK(rel_diff(r.absorption, 0.005) < 0.25);
  CHECK(rel_diff(r.slope, 24e-9) < 0.15);
  CHECK(rel_diff(r.width, mhz(0.72)) < 0.15);
  // AC Stark shift from the fourth level pulls the center below two-photon resonance.
  CHECK(r.center < mhz(-0.05));
  CHECK(r.center > mhz(-0.15));
  CHECK(r.eit_ratio == doctest::Approx(r.absorption / r.no_pump_absorption));
}

TEST_CASE("resonance of scheme B at 15 Torr") {
  const AtomicSystem sys = make_system(SchemeId::B, 15.0);
  const ResonanceParams r = characterize_resonance(sys);
  CHECK(rel_diff(r.absorption, 3.5e-5) < 0.25);
  CHECK(rel_diff(r.slope, 13.3e-9) < 0.15);
  CHECK(rel_diff(r.width, mhz(2.31)) < 0.15);
  CHECK(r.eit_ratio < 5e-3);

  const AnalyticEstimates e = analytic_estimates(sys);
  CHECK(rel_diff(e.absorption, r.absorption) < 0.1);
  CHECK(rel_diff(e.slope, r.slope) < 0.1);
  CHECK(rel_diff(e.width, r.width) < 0.1);
}

TEST_CASE("resonance search failures") {
  SearchSettings s;
  const ChiFunction rising = [](double d) { return cplx(0.0, 1.0 + d); };
  CHECK_THROWS_AS(characterize_resonance(rising, rising, 0.0, 1.0, s), ResonanceError);
  AtomicSystem weak = make_system(SchemeId::B, 15.0);
  weak.fields.pump_rabi = 1.0;
  CHECK_THROWS_AS(characterize_resonance(weak), DomainError);
  s.coarse_points = 3;
  CHECK_THROWS_AS(validate(s), DomainError);
}

TEST_CASE("generic resonance extraction on a quadratic line") {
  // phase + S d + i(A + d^2/W^2) around center c
  const double c = 3.0e5, a = 2e-3, slope = 1e-8, w = 4e6;
  const ChiFunction chi = [&](double x) {
    const double d = x - c;
    return cplx(0.1 + slope * d, a + d * d / (w * w));
  };
  const ChiFunction flat = [](double) { return cplx(0.0, 0.5); };
  const ResonanceParams r = characterize_resonance(chi, flat, 0.0, w, SearchSettings{});
  CHECK(r.center == doctest::Approx(c).epsilon(1e-6));
  CHECK(r.absorption == doctest::Approx(a).epsilon(1e-9));
  CHECK(r.slope == doctest::Approx(slope).epsilon(1e-7));
  CHECK(r.width == doctest::Approx(w).epsilon(1e-6));
  CHECK(r.eit_ratio == doctest::Approx(a / 0.5).epsilon(1e-9));
}

TEST_CASE("analytic estimates") {
  SUBCASE("scheme B at the quoted pump") {
    AtomicSystem sys = make_system(SchemeId::B, 15.0);
    sys.fields.pump_rabi = mhz(12.3);
    const AnalyticEstimates e = analytic_estimates(sys);
    CHECK(rel_diff(e.absorption, 3.5e-5) < 0.1);
    CHECK(rel_diff(e.slope, 13.3e-9) < 0.1);
    CHECK(rel_diff(e.width, mhz(2.34)) < 0.1);
    CHECK(e.offres_absorption == 0.0);
    CHECK(e.ac_stark_shift == 0.0);
  }
  SUBCASE("no diffusion loss means no absorption") {
    AtomicSystem sys = make_system(SchemeId::B, 15.0);
    sys.env.gamma_diff = 0.0;
    CHECK(analytic_estimates(sys).absorption == 0.0);
  }
  SUBCASE("scheme A has off-resonant absorption and a negative light shift") {
    const AnalyticEstimates e = analytic_estimates(make_system(SchemeId::A, 2.0));
    CHECK(e.offres_absorption > 0.0);
    CHECK(e.ac_stark_shift > 0.0);
  }
  SUBCASE("pump off") {
    AtomicSystem sys = make_system(SchemeId::B, 15.0);
    sys.fields.pump_rabi = 0.0;
    CHECK_THROWS_AS(analytic_estimates(sys), DomainError);
  }
}

TEST_CASE("pulse figures") {
  SUBCASE("scheme A at D = 350") {
    const PulseFigures f = pulse_figures(characterize_resonance(make_system(SchemeId::A, 2.0)), 350.0);
    CHECK(rel_diff(f.delay, 4.1e-6) < 0.1);
    CHECK(std::abs(f.loss - 0.82) < 0.03);
    CHECK(rel_diff(f.bandwidth, mhz(0.038)) < 0.1);
    CHECK(rel_diff(f.best_delay_bandwidth, 0.76) < 0.15);
  }
  SUBCASE("scheme B at D = 100") {
    const ResonanceParams r = characterize_resonance(make_system(SchemeId::B, 15.0));
    const PulseFigures f = pulse_figures(r, 100.0);
    CHECK(rel_diff(f.delay, 0.7e-6) < 0.1);
    CHECK(rel_diff(f.loss, 0.003) < 0.5);
    CHECK(rel_diff(f.bandwidth, mhz(0.23)) < 0.1);
    CHECK(f.max_optical_density == doctest::Approx(1.0 / r.absorption));
    CHECK(rel_diff(f.best_delay_bandwidth, 16.0) < 0.2);
  }
  SUBCASE("zero density") {
    ResonanceParams r;
    r.absorption = 1e-3;
    r.slope = 1e-8;
    r.width = 1e6;
    const PulseFigures f = pulse_figures(r, 0.0);
    CHECK(f.delay == 0.0);
    CHECK(f.loss == 0.0);
    CHECK(std::isinf(f.bandwidth));
    CHECK_THROWS_AS(pulse_figures(r, -1.0), DomainError);
  }
}

TEST_CASE("optical density") {
  const LevelScheme a = make_scheme(SchemeId::A);
  Geometry g;
  const Environment e = derive_environment(333.0, 2.0, 2.5e17, g);
  CHECK(rel_diff(optical_density(e, a), 370.0) < 0.02);
  CHECK(optical_density(derive_environment(333.0, 2.0, 0.0, g), a) == 0.0);
  g.cell_length *= 2.0;
  CHECK(optical_density(derive_environment(333.0, 2.0, 2.5e17, g), a) ==
        doctest::Approx(2.0 * optical_density(e, a)));
}

TEST_CASE("resonance barely moves with a uniform field apart from its center") {
  const AtomicSystem sys = make_system(SchemeId::B, 30.0);
  SearchSettings s;
  const std::vector<double> fields = {-200.0, -100.0, 0.0, 100.0, 200.0};
  const auto scan = b_field_sensitivity_scan(sys, fields, s);
  REQUIRE(scan.size() == fields.size());
  for (const auto& p : scan) REQUIRE(p.params);
  const ResonanceParams& ref = *scan[2].params;
  const ResonanceParams direct = characterize_resonance(sys, s);
  CHECK(ref.absorption == direct.absorption);
  CHECK(ref.center == direct.center);
  for (const auto& p : scan) {
    CHECK(rel_diff(p.params->absorption, ref.absorption) < 0.05);
    CHECK(rel_diff(p.params->slope, ref.slope) < 0.05);
    CHECK(rel_diff(p.params->width, ref.width) < 0.05);
  }
  CHECK(rel_diff(scan[4].params->center - scan[0].params->center, mhz(560.0)) < 0.05);
  CHECK_THROWS_AS(b_field_sensitivity_scan(sys, {}, s), DomainError);
}
