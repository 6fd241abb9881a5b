#include "dck/quadrature.h"

#include <algorithm>
#include <map>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

#include "dck/errors.h"

namespace dck {

QuadratureRule gaussLegendreUnit(int points) {
  if (points < 1) throw Error(ErrorKind::Validation, "quadrature needs at least one point");

  static std::mutex cacheMutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(cacheMutex);
  if (auto it = cache.find(points); it != cache.end()) return it->second;

  // boost returns the nonnegative zeros of P_n in ascending order.
  std::vector<double> zeros = boost::math::legendre_p_zeros<double>(points);
  std::vector<std::pair<double, double>> nodes; // (x on [-1, 1], weight)
  for (double x : zeros) {
    double dp = boost::math::legendre_p_prime(points, x);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes.emplace_back(x, w);
    if (x != 0.0) nodes.emplace_back(-x, w);
  }
  std::sort(nodes.begin(), nodes.end());

  QuadratureRule rule;
  for (const auto& [x, w] : nodes) {
    rule.nodes.push_back(0.5 * (x + 1.0));
    rule.weights.push_back(0.5 * w);
  }
  cache.emplace(points, rule);
  return rule;
}

} // namespace dck
