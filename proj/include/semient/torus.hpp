#pragma once

// The square torus C / (Z + iZ) at level k >= 3 with theta characteristic
// (mu, 0). H_k is spanned by
//
//   theta_j(z) = sum_n exp(-pi k (n+q)^2 + 2 pi i (n+q) k z),  q = (mu + j)/k,  j = 1..k,
//
// with <f, g> = \int_0^1 \int_0^1 f conj(g) e^{-2 pi k y^2} dx dy. Shifting q by
// an integer only re-indexes the series, so q is reduced into [0, 1).

#include <vector>

#include "semient/linalg.hpp"
#include "semient/quadrature.hpp"

namespace semient {

class TorusModel {
 public:
  /// Throws std::invalid_argument for k < 3 or non-finite mu.
  TorusModel(int k, double mu = 0.0);

  int k() const { return k_; }
  double mu() const { return mu_; }
  std::size_t dim() const { return static_cast<std::size_t>(k_); }

  /// (mu + j)/k reduced into [0, 1); j is 1-based.
  double offset(int j) const;

 private:
  int k_;
  double mu_;
};

/// Symmetric truncation |n| <= n_max of the theta series together with a
/// certified bound on the discarded terms of the raw series, valid for every
/// z with Im z in [y_lo, y_hi].
struct ThetaTruncation {
  int n_max = 0;
  double tail_bound = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;

  static constexpr int kHardCap = 64;
};

/// Smallest n_max whose tail bound is <= tol over the strip; throws
/// std::invalid_argument for tol <= 0 and std::runtime_error when n_max would
/// exceed ThetaTruncation::kHardCap.
ThetaTruncation theta_truncation(const TorusModel& model, double y_lo, double y_hi, double tol);

/// Truncation over the closed fundamental domain, 0 <= Im z <= 1.
inline ThetaTruncation domain_truncation(const TorusModel& model, double tol) {
  return theta_truncation(model, 0.0, 1.0, tol);
}

/// Upper bound on the discarded raw-series terms beyond |n| <= n_max over the strip.
double theta_tail_bound(int k, int n_max, double y_lo, double y_hi);

/// theta_j(z) with the truncation chosen for Im z; j is 1-based.
cplx theta_eval(const TorusModel& model, int j, cplx z, double tol);

/// theta_j(z) summed over |n| <= trunc.n_max; Im z must lie in the truncation's strip.
cplx theta_eval(const TorusModel& model, int j, cplx z, const ThetaTruncation& trunc);

/// theta_j(z) e^{-pi k y^2}, i.e. the section value in a unit-norm frame; each
/// term is evaluated as exp(-pi k (n + q + y)^2) so nothing overflows.
cplx theta_weighted(const TorusModel& model, int j, cplx z, const ThetaTruncation& trunc);

/// The inner-product density e^{(k pi / 2)(z - conj z)^2}, returned as a complex number.
cplx metric_weight(const TorusModel& model, cplx z);

struct TorusQuadratureOptions {
  double theta_tol = 1e-13;
  int x_nodes = 0;           ///< 0 selects the minimum 2k(2 n_max + 1)
  int y_nodes = 0;           ///< 0 selects adaptive doubling
  int y_start = 16;
  int y_max = 2048;
  double refine_tol = 1e-10;  ///< doubling stops once the Gram changes by less
};

/// Periodic trapezoid in Re z (exact on the truncated Fourier series) times
/// Gauss-Legendre in Im z on [0, 1].
class TorusQuadrature {
 public:
  TorusQuadrature(const TorusModel& model, TorusQuadratureOptions opts = {}, Isa isa = Isa::Auto);

  int k() const { return k_; }
  double mu() const { return mu_; }
  double theta_tol() const { return theta_tol_; }
  int x_count() const { return x_count_; }
  int y_count() const { return y_count_; }
  const ThetaTruncation& truncation() const { return trunc_; }
  const std::vector<WeightedNode>& nodes() const { return nodes_; }
  /// Largest Gram change seen in the last doubling step (0 when not adaptive).
  double refinement_change() const { return refine_change_; }

  static int min_x_nodes(int k, int n_max) { return 2 * k * (2 * n_max + 1); }

 private:
  int k_;
  double mu_;
  double theta_tol_;
  int x_count_ = 0;
  int y_count_ = 0;
  ThetaTruncation trunc_;
  std::vector<WeightedNode> nodes_;
  double refine_change_ = 0.0;
};

/// Gram matrix of the raw theta_j.
CMatrix torus_gram(const TorusModel& model, const TorusQuadrature& quad, Isa isa = Isa::Auto);

/// Orthonormal basis phi_j = theta_j / ||theta_j||.
class TorusBasis {
 public:
  /// Points off the fundamental strip get their own truncation at `theta_tol`.
  TorusBasis(TorusModel model, ThetaTruncation trunc, double theta_tol, std::vector<double> norms);

  const TorusModel& model() const { return model_; }
  std::size_t dim() const { return model_.dim(); }
  const std::vector<double>& theta_norms() const { return norms_; }

  /// phi_j(z), 1-based j.
  cplx eval(int j, cplx z) const;
  /// phi_j(z) e^{-pi k y^2} for all j (0-based vector index).
  std::vector<cplx> normalized_values(cplx z) const;

  /// The real structure z -> -conj(z).
  static cplx involution(cplx z) { return -std::conj(z); }

 private:
  const ThetaTruncation& truncation_for(double y, ThetaTruncation& scratch) const;

  TorusModel model_;
  ThetaTruncation trunc_;
  double tol_;
  std::vector<double> norms_;
};

/// Builds the orthonormal basis from the quadrature Gram. Throws
/// std::runtime_error when the Gram is not diagonal with equal diagonal
/// entries to 1e-8.
TorusBasis orthonormal_basis(const TorusModel& model, const TorusQuadrature& quad, Isa isa = Isa::Auto);

/// Gram matrix <phi_j, phi_l> of the orthonormal basis under the quadrature.
CMatrix basis_gram(const TorusBasis& basis, const TorusQuadrature& quad, Isa isa = Isa::Auto);

}  // namespace semient
