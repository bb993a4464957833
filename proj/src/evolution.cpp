#include "eitsim/evolution.hpp"

#include <cmath>

#include "eitsim/errors.hpp"

namespace eitsim {

namespace {
constexpr cplx kI{0.0, 1.0};
}

ShiftedDetunings shifted_detunings(const LevelScheme& scheme, const FieldConfig& fields,
                                   double signal_detuning, double pressure_torr) {
  const auto& c = kRb87;
  const double z1 = scheme.zeeman_shift(1, fields.bz);
  const double z2 = scheme.zeeman_shift(2, fields.bz);
  const double z3 = scheme.zeeman_shift(3, fields.bz);
  const double z4 = scheme.zeeman_shift(4, fields.bz);
  const double pressure_shift = c.excited_pressure_shift * pressure_torr;
  ShiftedDetunings d;
  d.signal = signal_detuning - z3 - pressure_shift + z1;
  d.pump = fields.pump_detuning - z3 - pressure_shift + z2;
  d.excited_splitting = c.excited_hyperfine + z4 - z3;
  return d;
}

EvolutionMatrix build_evolution_matrix(const LevelScheme& scheme, const Environment& env,
                                       const FieldConfig& fields, double signal_detuning,
                                       double doppler_shift) {
  const ShiftedDetunings d = shifted_detunings(scheme, fields, signal_detuning, env.pressure);
  const cplx pump = fields.pump_rabi;
  EvolutionMatrix m = EvolutionMatrix::Zero();
  m(0, 0) = kI * (d.signal - d.pump) - env.gamma_diff;
  m(0, 1) = -0.5 * kI * std::conj(pump);
  m(0, 2) = -0.5 * kI * scheme.beta24 * std::conj(pump);
  m(1, 0) = -0.5 * kI * pump;
  m(1, 1) = kI * (d.signal + doppler_shift) - env.gamma_e;
  m(2, 0) = -0.5 * kI * scheme.beta24 * pump;
  m(2, 2) = kI * (d.signal - d.excited_splitting + doppler_shift) - env.gamma_e;
  return m;
}

CoherenceVector source_vector(const LevelScheme& scheme, double signal_rabi) {
  return CoherenceVector(0.0, -0.5 * kI * signal_rabi, -0.5 * kI * scheme.beta14 * signal_rabi);
}

CoherenceVector steady_state(const EvolutionMatrix& m, const LevelScheme& scheme,
                             double signal_rabi) {
  const CoherenceVector s = source_vector(scheme, signal_rabi);
  const EvolutionMatrix off = m - EvolutionMatrix(m.diagonal().asDiagonal());
  if (off.isZero(0.0)) {
    // Pump off: the coherences decouple and an undriven one stays at zero.
    CoherenceVector rho = CoherenceVector::Zero();
    for (int k = 0; k < 3; ++k) {
      if (s(k) == 0.0) continue;
      if (m(k, k) == 0.0) throw SolverError("evolution matrix is singular");
      rho(k) = -s(k) / m(k, k);
    }
    return rho;
  }
  const Eigen::FullPivLU<EvolutionMatrix> lu(m);
  if (!lu.isInvertible()) throw SolverError("evolution matrix is singular");
  return -lu.solve(s);
}

CoherenceVector steady_state_reduced(const EvolutionMatrix& m, const LevelScheme& scheme,
                                     double signal_rabi) {
  if (scheme.has_level4 && (scheme.beta14 != 0.0 || scheme.beta24 != 0.0))
    throw DomainError("scheme", "reduced solve needs an inert fourth level");
  const cplx s1 = -0.5 * kI * signal_rabi;
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det == 0.0) throw SolverError("evolution matrix is singular");
  // rho = -M^-1 S with S = (0, s1)
  CoherenceVector rho;
  rho(0) = m(0, 1) * s1 / det;
  rho(1) = -m(0, 0) * s1 / det;
  rho(2) = 0.0;
  return rho;
}

cplx chi_single_velocity(const CoherenceVector& rho, const LevelScheme& scheme, double signal_rabi) {
  if (signal_rabi == 0.0) throw DomainError("signal_rabi", "must be nonzero");
  return -(kRb87.radiative_decay / signal_rabi) * readout(rho, scheme);
}

cplx chi_at(const AtomicSystem& sys, double signal_detuning, double doppler_shift) {
  const EvolutionMatrix m =
      build_evolution_matrix(sys.scheme, sys.env, sys.fields, signal_detuning, doppler_shift);
  return chi_single_velocity(steady_state(m, sys.scheme, sys.fields.signal_rabi), sys.scheme,
                             sys.fields.signal_rabi);
}

}  // namespace eitsim
