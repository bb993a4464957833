#include "eitsim/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "eitsim/errors.hpp"
#include "eitsim/faddeeva.hpp"
#include "eitsim/quadrature.hpp"

namespace eitsim {

namespace {

constexpr double kMaxCondition = 1.0e8;
constexpr double kComponentFloor = 1.0e-12;

AtomicSystem at_field(const AtomicSystem& sys, double bz) {
  AtomicSystem copy = sys;
  copy.fields.bz = bz;
  return copy;
}

EvolutionMatrix matrix_at(const AtomicSystem& sys, double signal_detuning, double doppler_shift) {
  return build_evolution_matrix(sys.scheme, sys.env, sys.fields, signal_detuning, doppler_shift);
}

// M is affine in B; its slope is diagonal.
EvolutionMatrix field_slope(const AtomicSystem& sys, double signal_detuning, double doppler_shift) {
  return matrix_at(at_field(sys, 1.0), signal_detuning, doppler_shift) -
         matrix_at(at_field(sys, 0.0), signal_detuning, doppler_shift);
}

Eigen::FullPivLU<EvolutionMatrix> factor(const EvolutionMatrix& m) {
  Eigen::FullPivLU<EvolutionMatrix> lu(m);
  if (!lu.isInvertible()) throw SolverError("evolution matrix is singular");
  return lu;
}

void require_gradient(double gradient) {
  if (!(gradient >= 0.0) || !std::isfinite(gradient))
    throw DomainError("gradient", "must be nonnegative and finite");
}

bool pole_average(const AtomicSystem& sys, double signal_detuning, double doppler_shift,
                  double width, CoherenceVector& out) {
  const EvolutionMatrix m0 = matrix_at(at_field(sys, 0.0), signal_detuning, doppler_shift);
  const EvolutionMatrix dm = field_slope(sys, signal_detuning, doppler_shift);
  const Eigen::FullPivLU<EvolutionMatrix> dlu(dm);
  if (!dlu.isInvertible()) return false;
  // M(B) = dM (B - K) with K = -dM^-1 M(0)
  const EvolutionMatrix k = -dlu.solve(m0);
  const Eigen::ComplexEigenSolver<EvolutionMatrix> eig(k);
  if (eig.info() != Eigen::Success) return false;
  const EvolutionMatrix v = eig.eigenvectors();
  const Eigen::JacobiSVD<EvolutionMatrix> svd(v);
  const auto& sv = svd.singularValues();
  if (!(sv(2) > 0.0) || !(sv(0) / sv(2) < kMaxCondition)) return false;
  const CoherenceVector c =
      v.fullPivLu().solve(dlu.solve(source_vector(sys.scheme, sys.fields.signal_rabi)));
  CoherenceVector total = CoherenceVector::Zero();
  for (int j = 0; j < 3; ++j) {
    if (c(j) == 0.0) continue;
    const cplx pole = eig.eigenvalues()(j);
    if (pole.imag() == 0.0) return false;
    total -= v.col(j) * c(j) * gaussian_pole_average(pole, sys.fields.bz, width);
  }
  out = total;
  return total.allFinite();
}

CoherenceVector hermite_average(const AtomicSystem& sys, double signal_detuning,
                                double doppler_shift, double width, const GradientSettings& s) {
  auto eval = [&](int n) {
    const GaussHermiteRule rule = gauss_hermite(n);
    CoherenceVector sum = CoherenceVector::Zero();
    for (int k = 0; k < n; ++k) {
      const AtomicSystem local = at_field(sys, sys.fields.bz + width * rule.nodes[k]);
      sum += rule.weights[k] * steady_state(matrix_at(local, signal_detuning, doppler_shift),
                                            sys.scheme, sys.fields.signal_rabi);
    }
    return sum;
  };
  int n = s.field_nodes;
  CoherenceVector coarse = eval(n);
  while (2 * n <= s.max_field_nodes) {
    const CoherenceVector fine = eval(2 * n);
    if ((fine - coarse).norm() <= s.field_rel_tol * fine.norm()) return fine;
    coarse = fine;
    n *= 2;
  }
  throw QuadratureError("field average did not converge within " +
                            std::to_string(s.max_field_nodes) + " nodes",
                        eval(n / 2).norm(), coarse.norm(), n);
}

}  // namespace

void validate(const GradientSettings& s) {
  if (!(s.derivative_step >= 0.0)) throw DomainError("derivative_step", "must be nonnegative");
  if (!(s.derivative_tol > 0.0)) throw DomainError("derivative_tol", "must be positive");
  if (s.max_step_reductions < 0) throw DomainError("max_step_reductions", "must be nonnegative");
  if (s.field_nodes < 2) throw DomainError("field_nodes", "must be at least 2");
  if (s.max_field_nodes < s.field_nodes)
    throw DomainError("max_field_nodes", "must be at least field_nodes");
  if (!(s.field_rel_tol > 0.0)) throw DomainError("field_rel_tol", "must be positive");
  validate(s.search);
}

CoherenceVector rho_d2_dB(const FieldResponse& rho_of_b, double bz, double step,
                          const GradientSettings& s) {
  if (!(step > 0.0)) throw DomainError("derivative_step", "must be positive");
  const CoherenceVector f0 = rho_of_b(bz);
  auto second = [&](double h) {
    return CoherenceVector((rho_of_b(bz + h) - 2.0 * f0 + rho_of_b(bz - h)) / (h * h));
  };
  auto refined = [&](double h) { return CoherenceVector((4.0 * second(0.5 * h) - second(h)) / 3.0); };

  double h = step;
  CoherenceVector previous = refined(h);
  for (int k = 0; k <= s.max_step_reductions; ++k) {
    h *= 0.5;
    const CoherenceVector next = refined(h);
    const double noise = 1.0e3 * std::numeric_limits<double>::epsilon() * f0.norm() / (h * h);
    if ((next - previous).norm() <= s.derivative_tol * next.norm() + noise) return previous;
    previous = next;
  }
  std::ostringstream os;
  os << "second field derivative did not settle: step reduced to " << h << " G at B = " << bz
     << " G, last value norm " << previous.norm();
  throw DerivativeError(os.str());
}

CoherenceVector rho_d2_dB(const AtomicSystem& sys, double signal_detuning, double doppler_shift,
                          double step, const GradientSettings& s) {
  auto rho = [&](double bz) {
    const AtomicSystem local = at_field(sys, bz);
    return steady_state(matrix_at(local, signal_detuning, doppler_shift), sys.scheme,
                        sys.fields.signal_rabi);
  };
  return rho_d2_dB(rho, sys.fields.bz, step, s);
}

CoherenceVector rho_d2_dB_exact(const AtomicSystem& sys, double signal_detuning,
                                double doppler_shift) {
  const auto lu = factor(matrix_at(sys, signal_detuning, doppler_shift));
  const EvolutionMatrix dm = field_slope(sys, signal_detuning, doppler_shift);
  const CoherenceVector rho = -lu.solve(source_vector(sys.scheme, sys.fields.signal_rabi));
  return 2.0 * lu.solve(dm * lu.solve(dm * rho));
}

double default_derivative_step(const AtomicSystem& sys, const SearchSettings& search) {
  const double w = resonance_width_guess(sys, search);
  return std::clamp(w / sys.scheme.resonance_slope() / 50.0, 1.0e-4, 1.0);
}

CoherenceVector perturbative_correction(const AtomicSystem& sys, double signal_detuning,
                                        double doppler_shift, double gradient) {
  require_gradient(gradient);
  if (gradient == 0.0) return CoherenceVector::Zero();
  const auto lu = factor(matrix_at(sys, signal_detuning, doppler_shift));
  const double kappa = sys.env.diffusion_constant * gradient * gradient / 3.0;
  return -kappa * lu.solve(rho_d2_dB_exact(sys, signal_detuning, doppler_shift));
}

FieldAveragingWidth delta_B(const AtomicSystem& sys, double signal_detuning, double doppler_shift,
                            double gradient) {
  require_gradient(gradient);
  FieldAveragingWidth out;
  if (gradient == 0.0) return out;
  const auto lu = factor(matrix_at(sys, signal_detuning, doppler_shift));
  const CoherenceVector d2 = rho_d2_dB_exact(sys, signal_detuning, doppler_shift);
  const double scale = d2.norm();
  if (scale == 0.0) return out;
  const CoherenceVector resolved = lu.solve(d2);
  double ratio = 0.0;
  if (std::abs(d2(1)) >= kComponentFloor * scale) {
    ratio = std::abs(resolved(1) / d2(1));
  } else {
    ratio = resolved.norm() / scale;
    out.fallback = true;
  }
  const double kappa = sys.env.diffusion_constant * gradient * gradient / 3.0;
  out.width = std::sqrt(4.0 * kappa * ratio);
  return out;
}

CoherenceVector diffusion_averaged_rho(const AtomicSystem& sys, double signal_detuning,
                                       double doppler_shift, double gradient,
                                       const GradientSettings& s) {
  require_gradient(gradient);
  const FieldAveragingWidth w = delta_B(sys, signal_detuning, doppler_shift, gradient);
  if (w.width == 0.0)
    return steady_state(matrix_at(sys, signal_detuning, doppler_shift), sys.scheme,
                        sys.fields.signal_rabi);
  if (s.average == FieldAverageMethod::Exact) {
    CoherenceVector out;
    if (pole_average(sys, signal_detuning, doppler_shift, w.width, out)) return out;
  }
  return hermite_average(sys, signal_detuning, doppler_shift, w.width, s);
}

cplx gradient_chi(const AtomicSystem& sys, double signal_detuning, double gradient,
                  const GradientSettings& s) {
  require_gradient(gradient);
  if (gradient == 0.0) return doppler_averaged_chi(sys, signal_detuning, s.search.doppler);
  DopplerSettings ds = s.search.doppler;
  if (ds.method == DopplerMethod::Exact) ds.method = DopplerMethod::Trapezoid;
  const double scale = -kRb87.radiative_decay / sys.fields.signal_rabi;
  auto f = [&](double shift) {
    return scale * readout(diffusion_averaged_rho(sys, signal_detuning, shift, gradient, s),
                           sys.scheme);
  };
  return doppler_average(f, sys.env.doppler_width, sys.env.gamma_e, ds);
}

ResonanceParams gradient_resonance(const AtomicSystem& sys, double gradient,
                                   const GradientSettings& s) {
  require_gradient(gradient);
  validate(s);
  AtomicSystem local = sys;
  local.fields.gradient = gradient;
  if (gradient == 0.0) return characterize_resonance(local, s.search);
  const double o = local.fields.pump_rabi;
  if (!(o * o > local.env.gamma_diff * local.env.gamma_e))
    throw DomainError("pump_rabi", "too weak for an EIT resonance (Omega_p^2 <= gamma_diff*gamma_e)");
  const AtomicSystem bare = without_pump(local);
  auto chi = [&](double d) { return gradient_chi(local, d, gradient, s); };
  auto no_pump = [&](double d) { return doppler_averaged_chi(bare, d, s.search.doppler); };
  return characterize_resonance(chi, no_pump, resonance_center_guess(local),
                                resonance_width_guess(local, s.search), s.search);
}

SusceptibilityCurve gradient_curve(const AtomicSystem& sys, double gradient,
                                   std::vector<double> detunings, const GradientSettings& s,
                                   unsigned threads) {
  require_gradient(gradient);
  validate(s);
  AtomicSystem local = sys;
  local.fields.gradient = gradient;
  auto c = sample_curve([&](double d) { return gradient_chi(local, d, gradient, s); },
                        std::move(detunings), threads);
  c.system = local;
  c.quadrature = s.search.doppler;
  return c;
}

}  // namespace eitsim
