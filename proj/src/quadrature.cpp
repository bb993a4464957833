#include "eitsim/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "eitsim/errors.hpp"

namespace eitsim {

// Golub-Welsch on the Jacobi matrix of the Hermite recurrence.
GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("nodes", "must be at least 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v = solver.eigenvectors()(0, k);
    rule.weights[k] = v * v;
  }
  return rule;
}

}  // namespace eitsim
