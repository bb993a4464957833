#pragma once

#include "eitsim/constants.hpp"

namespace eitsim {

// Interaction region and cell, all lengths in metres.
struct Geometry {
  double cell_length = 0.01;
  double width = 2.0e-3;
  double height = 2.0e-3;
};

struct Environment {
  double temperature = 0.0;  // K
  double pressure = 0.0;     // Torr
  double density = 0.0;      // m^-3
  Geometry geometry;

  double thermal_velocity = 0.0;    // m/s
  double diffusion_constant = 0.0;  // m^2/s
  double mean_free_path = 0.0;      // m
  double gamma_diff = 0.0;          // rad/s
  double gamma_e = 0.0;             // rad/s
  double doppler_width = 0.0;       // rad/s
};

// Throws DomainError naming the first nonpositive input.
Environment derive_environment(double temperature_k, double pressure_torr, double density_m3,
                               const Geometry& geometry, const PhysicalConstants& c = kRb87);

double thermal_velocity(double temperature_k, const PhysicalConstants& c = kRb87);
double doppler_width(double temperature_k, const PhysicalConstants& c = kRb87);

}  // namespace eitsim
