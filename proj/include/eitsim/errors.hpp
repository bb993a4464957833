#pragma once

#include <stdexcept>
#include <string>

namespace eitsim {

// Bad inputs: nonpositive physical quantities, malformed configuration, grids
// that cannot represent the requested signal.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public ValidationError {
 public:
  DomainError(const std::string& field, const std::string& what)
      : ValidationError(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Numerical or physical failure on otherwise valid inputs.
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class QuadratureError : public PhysicsError {
 public:
  QuadratureError(const std::string& what, double coarse, double fine, int nodes)
      : PhysicsError(what), coarse_(coarse), fine_(fine), nodes_(nodes) {}
  double coarse_estimate() const noexcept { return coarse_; }
  double fine_estimate() const noexcept { return fine_; }
  int nodes() const noexcept { return nodes_; }

 private:
  double coarse_;
  double fine_;
  int nodes_;
};

class ResonanceError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class DerivativeError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class SpectralCoverageError : public PhysicsError {
 public:
  SpectralCoverageError(const std::string& what, double band_low, double band_high)
      : PhysicsError(what), low_(band_low), high_(band_high) {}
  double band_low() const noexcept { return low_; }
  double band_high() const noexcept { return high_; }

 private:
  double low_;
  double high_;
};

class MeasurementError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

// Propagated signal reaches the ends of the time window.
class WraparoundError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace eitsim
