#pragma once

#include <complex>
#include <vector>

namespace semient {

/// One-dimensional rule: sum_i weights[i] * f(nodes[i]).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// m-point periodic trapezoid rule on [0, period); integrates e^{2 pi i f x / period}
/// exactly for integer |f| < m.
QuadratureRule periodic_trapezoid(int m, double period);

/// A point of a two-dimensional product rule, with the measure folded into the weight.
struct WeightedNode {
  std::complex<double> point;
  double weight;
};

}  // namespace semient
