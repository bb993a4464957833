#pragma once

#include <complex>

#include <Eigen/Dense>

#include "eitsim/environment.hpp"
#include "eitsim/fields.hpp"
#include "eitsim/level_scheme.hpp"

namespace eitsim {

using cplx = std::complex<double>;
// Rows/columns ordered (rho21, rho31, rho41).
using EvolutionMatrix = Eigen::Matrix3cd;
using CoherenceVector = Eigen::Vector3cd;

struct AtomicSystem {
  LevelScheme scheme;
  Environment env;
  FieldConfig fields;
};

struct ShiftedDetunings {
  double signal = 0.0;            // rad/s
  double pump = 0.0;              // rad/s
  double excited_splitting = 0.0; // rad/s, levels 4 and 3
};

ShiftedDetunings shifted_detunings(const LevelScheme& scheme, const FieldConfig& fields,
                                   double signal_detuning, double pressure_torr);

EvolutionMatrix build_evolution_matrix(const LevelScheme& scheme, const Environment& env,
                                       const FieldConfig& fields, double signal_detuning,
                                       double doppler_shift);

CoherenceVector source_vector(const LevelScheme& scheme, double signal_rabi);

// Solves M rho + S = 0. Throws SolverError when M is singular.
CoherenceVector steady_state(const EvolutionMatrix& m, const LevelScheme& scheme,
                             double signal_rabi);

// Same solve restricted to (rho21, rho31); valid only without level 4.
CoherenceVector steady_state_reduced(const EvolutionMatrix& m, const LevelScheme& scheme,
                                     double signal_rabi);

cplx chi_single_velocity(const CoherenceVector& rho, const LevelScheme& scheme, double signal_rabi);

// build_evolution_matrix -> steady_state -> chi_single_velocity.
cplx chi_at(const AtomicSystem& sys, double signal_detuning, double doppler_shift);

// Linear combination of rho31 and rho41 that the susceptibility reads.
inline cplx readout(const CoherenceVector& rho, const LevelScheme& scheme) {
  return rho(1) + scheme.beta14 * rho(2);
}

}  // namespace eitsim
