#pragma once

#include <vector>

namespace dck {

// Gauss-Legendre rule mapped onto [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gaussLegendreUnit(int points);

} // namespace dck
