#include "semient/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace semient {

namespace {

// Returns (P_n(x), P_n'(x)) from the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double prev = 1.0;
  double cur = x;
  for (int m = 2; m <= n; ++m) {
    const double next = ((2.0 * m - 1.0) * x * cur - (m - 1.0) * prev) / m;
    prev = cur;
    cur = next;
  }
  return {cur, n * (x * cur - prev) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument(fmt::format("gauss_legendre: need n >= 1, got {}", n));
  if (!(a < b)) throw std::invalid_argument(fmt::format("gauss_legendre: need a < b, got [{}, {}]", a, b));
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  // Roots are symmetric; Newton on P_n from the Tricomi initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-16) break;
    }
    if (n % 2 == 1 && i == n / 2) x = 0.0;
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // ascending order: node i is -x, node n-1-i is +x
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int m, double period) {
  if (m < 1) throw std::invalid_argument(fmt::format("periodic_trapezoid: need m >= 1, got {}", m));
  if (!(period > 0.0)) throw std::invalid_argument(fmt::format("periodic_trapezoid: period must be > 0, got {}", period));
  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.assign(m, period / m);
  for (int i = 0; i < m; ++i) rule.nodes[i] = period * i / m;
  return rule;
}

}  // namespace semient
