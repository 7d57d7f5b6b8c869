#pragma once

#include <vector>

namespace orlicz {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached; safe to call from several threads.
const GaussRule& gauss_legendre(int n);

// Integrate f over [a, b] with an n-point rule.
template <class F>
double integrate_gauss(F&& f, double a, double b, int n) {
  const GaussRule& g = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) sum += g.weights[i] * f(mid + half * g.nodes[i]);
  return sum * half;
}

}  // namespace orlicz
