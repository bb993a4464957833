#include "eitsim/doppler.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "eitsim/errors.hpp"
#include "eitsim/faddeeva.hpp"
#include "eitsim/quadrature.hpp"

namespace eitsim {

namespace {

constexpr double kMaxCondition = 1.0e8;
constexpr int kMaxHermiteNodes = 512;

bool converged(cplx coarse, cplx fine, const DopplerSettings& s) {
  return std::abs(fine - coarse) <= s.rel_tol * std::abs(fine) + s.abs_tol;
}

cplx trapezoid_average(const VelocityResponse& f, double width, double feature,
                       const DopplerSettings& s) {
  const double half = s.span * width;
  // Node count is odd so the grid is symmetric and contains zero.
  int intervals = std::max(s.min_nodes, 2);
  if (feature > 0.0)
    intervals = std::max(intervals, static_cast<int>(std::ceil(2.0 * half / (0.5 * feature))));
  intervals += intervals % 2;
  double h = 2.0 * half / intervals;
  auto weight = [&](double x) { return std::exp(-(x / width) * (x / width)); };

  cplx sum = 0.0;
  for (int k = 0; k <= intervals; ++k) {
    const double x = -half + k * h;
    const double end = (k == 0 || k == intervals) ? 0.5 : 1.0;
    sum += end * weight(x) * f(x);
  }
  const double norm = 1.0 / (std::sqrt(std::numbers::pi) * width);
  cplx estimate = sum * h * norm;
  cplx previous = estimate;
  while (true) {
    if (2 * intervals + 1 > s.max_nodes) {
      throw QuadratureError("Doppler trapezoid did not converge within " +
                                std::to_string(s.max_nodes) + " nodes",
                            std::abs(previous), std::abs(estimate), intervals + 1);
    }
    for (int k = 0; k < intervals; ++k) {
      const double x = -half + (k + 0.5) * h;
      sum += weight(x) * f(x);
    }
    intervals *= 2;
    h *= 0.5;
    const cplx next = sum * h * norm;
    if (converged(estimate, next, s)) return next;
    previous = estimate;
    estimate = next;
  }
}

cplx hermite_average(const VelocityResponse& f, double width, const DopplerSettings& s) {
  auto eval = [&](int n) {
    const GaussHermiteRule rule = gauss_hermite(n);
    cplx sum = 0.0;
    for (int k = 0; k < n; ++k) sum += rule.weights[k] * f(width * rule.nodes[k]);
    return sum;
  };
  int n = std::max(s.min_nodes, 16);
  cplx coarse = eval(n);
  while (2 * n <= kMaxHermiteNodes) {
    const cplx fine = eval(2 * n);
    if (converged(coarse, fine, s)) return fine;
    coarse = fine;
    n *= 2;
  }
  throw QuadratureError("Doppler Gauss-Hermite did not converge within 512 nodes",
                        std::abs(eval(n / 2)), std::abs(coarse), n);
}

}  // namespace

void validate(const DopplerSettings& s) {
  if (s.min_nodes < 16) throw DomainError("min_nodes", "must be at least 16");
  if (s.max_nodes < s.min_nodes) throw DomainError("max_nodes", "must be at least min_nodes");
  if (!(s.rel_tol > 0.0)) throw DomainError("rel_tol", "must be positive");
  if (!(s.abs_tol >= 0.0)) throw DomainError("abs_tol", "must be nonnegative");
  if (!(s.span > 0.0)) throw DomainError("span", "must be positive");
}

cplx doppler_average(const VelocityResponse& f, double doppler_width, double feature_width,
                     const DopplerSettings& settings) {
  validate(settings);
  if (!(doppler_width > 0.0)) throw DomainError("doppler_width", "must be positive");
  if (settings.method == DopplerMethod::GaussHermite)
    return hermite_average(f, doppler_width, settings);
  return trapezoid_average(f, doppler_width, feature_width, settings);
}

bool doppler_averaged_chi_exact(const AtomicSystem& sys, double signal_detuning, cplx& out) {
  const LevelScheme& scheme = sys.scheme;
  const EvolutionMatrix m =
      build_evolution_matrix(scheme, sys.env, sys.fields, signal_detuning, 0.0);
  const CoherenceVector source = source_vector(scheme, sys.fields.signal_rabi);
  const double scale = m.cwiseAbs().maxCoeff();
  if (std::abs(m(0, 0)) < 1.0e-12 * scale) return false;

  // Eliminate rho21; the Doppler shift enters the remaining block as i*delta*I.
  const Eigen::Matrix2cd k = m.bottomRightCorner<2, 2>() -
                             m.block<2, 1>(1, 0) * m.block<1, 2>(0, 1) / m(0, 0);
  const Eigen::Matrix2cd l = cplx(0.0, 1.0) * k;
  const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> eig(l);
  if (eig.info() != Eigen::Success) return false;
  const Eigen::Matrix2cd v = eig.eigenvectors();
  const Eigen::FullPivLU<Eigen::Matrix2cd> lu(v);
  if (!lu.isInvertible()) return false;
  const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(v);
  const double cond = svd.singularValues()(0) / svd.singularValues()(1);
  if (!(cond < kMaxCondition)) return false;

  const Eigen::Vector2cd coeff = lu.solve(source.tail<2>());
  cplx total = 0.0;
  for (int j = 0; j < 2; ++j) {
    const cplx weight = (v(0, j) + scheme.beta14 * v(1, j)) * coeff(j);
    if (weight == 0.0) continue;
    const cplx pole = eig.eigenvalues()(j);
    if (pole.imag() == 0.0) return false;
    total += cplx(0.0, 1.0) * weight * gaussian_pole_average(pole, 0.0, sys.env.doppler_width);
  }
  out = -(kRb87.radiative_decay / sys.fields.signal_rabi) * total;
  return std::isfinite(out.real()) && std::isfinite(out.imag());
}

cplx doppler_averaged_chi(const AtomicSystem& sys, double signal_detuning,
                          const DopplerSettings& settings) {
  validate(settings);
  if (settings.method == DopplerMethod::Exact) {
    cplx out;
    if (doppler_averaged_chi_exact(sys, signal_detuning, out)) return out;
  }
  auto f = [&](double shift) { return chi_at(sys, signal_detuning, shift); };
  return doppler_average(f, sys.env.doppler_width, sys.env.gamma_e, settings);
}

}  // namespace eitsim
