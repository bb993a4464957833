#pragma once

#include <vector>

namespace eitsim {

// Nodes and weights for the probability measure exp(-t^2)/sqrt(pi) dt.
// Weights sum to one.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int n);

}  // namespace eitsim
