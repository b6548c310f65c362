#pragma once

// The projective line with the Fubini-Study metric, worked on the affine chart
// z = zeta_0 / zeta_1. H_k is the space of polynomials of degree <= k with
//
//   <f, g> = (1/pi) \int_C f(z) conj(g(z)) (1 + |z|^2)^{-(k+2)} dx dy,
//
// and orthonormal basis phi_j(z) = sqrt((k+1) C(k, j)) z^j, j = 0..k.

#include <vector>

#include "semient/linalg.hpp"
#include "semient/quadrature.hpp"

namespace semient {

class SphereModel {
 public:
  /// Throws std::invalid_argument for k < 1.
  explicit SphereModel(int k);

  int k() const { return k_; }
  std::size_t dim() const { return static_cast<std::size_t>(k_) + 1; }

  /// phi_j(z); throws std::out_of_range unless 0 <= j <= k.
  cplx basis_eval(int j, cplx z) const;

  /// phi_j(z) / (1 + |z|^2)^{k/2} for all j: basis values expressed in a
  /// unit-norm frame, so that h(phi_j, phi_l)(z) = n_j conj(n_l).
  std::vector<cplx> normalized_values(cplx z) const;

  /// normalized_values at the chart point with t = |z|^2 / (1 + |z|^2) and
  /// arg z = theta, from |n_j| = amp_j t^{j/2} (1-t)^{(k-j)/2}. Quadrature rules
  /// use this form so their nodes are not rounded through z.
  void chart_values(double t, double theta, std::vector<cplx>& out) const;

  /// sqrt((k+1) C(k, j)).
  double amplitude(int j) const { return amplitude_.at(j); }

  /// Pointwise Hermitian pairing h(phi_j(z), phi_l(z)) = phi_j conj(phi_l) / (1+|z|^2)^k.
  CMatrix pairing_matrix(cplx z) const;

  /// The real structure z -> conj(z).
  static cplx involution(cplx z) { return std::conj(z); }

 private:
  int k_;
  std::vector<double> log_amplitude_;  // 0.5 * ln((k+1) C(k, j))
  std::vector<double> amplitude_;
};

struct ChartNode {
  double t;
  double theta;
  double weight;
};

/// Product rule on the chart: Gauss-Legendre in t = r^2 / (1 + r^2) on [0, 1]
/// times the periodic trapezoid in the angle. The pulled-back volume form
/// dV = (1/pi)(1+r^2)^{-2} dx dy becomes (1/2pi) dt dtheta, so node weights sum to 1.
class SphereQuadrature {
 public:
  /// radial = 0 and angular = 0 select the defaults ceil((k+2)/2) and 2k+2.
  /// Throws std::invalid_argument when either count is below those minima,
  /// since the rule would no longer be exact on the Gram integrands.
  explicit SphereQuadrature(const SphereModel& model, int radial = 0, int angular = 0);

  int k() const { return k_; }
  int radial_count() const { return static_cast<int>(radial_.size()); }
  int angular_count() const { return angular_; }
  const std::vector<WeightedNode>& nodes() const { return nodes_; }
  /// The same nodes in (t, theta) coordinates.
  const std::vector<ChartNode>& chart_nodes() const { return chart_; }
  /// Gauss-Legendre rule in t; chart node a * angular_count() + b sits on ring a.
  const QuadratureRule& radial_rule() const { return radial_; }

  static int min_radial(int k) { return (k + 3) / 2; }
  static int min_angular(int k) { return 2 * k + 2; }

 private:
  int k_;
  int angular_;
  QuadratureRule radial_;
  std::vector<WeightedNode> nodes_;
  std::vector<ChartNode> chart_;
};

/// Quadrature Gram matrix <phi_j, phi_l>.
CMatrix gram_matrix(const SphereModel& model, const SphereQuadrature& quad, Isa isa = Isa::Auto);

/// Quadrature Gram matrix of the raw monomials z^j.
CMatrix monomial_gram(const SphereModel& model, const SphereQuadrature& quad);

}  // namespace semient
