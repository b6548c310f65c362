#pragma once

// Entanglement measures for bipartite pure states v = sum_{jl} c_{jl} phi_j (x) phi_l,
// held as their coefficient matrix C.
//
// Conventions: the reduced operator Tr_2(v v^H) is C C^H. With the SVD
// C = U diag(alpha) V^H the Schmidt bases are psi_m = U[:, m] and
// chi_m = conj(V[:, m]), so that C = sum_m alpha_m psi_m chi_m^T.
// Entropies are in nats.

#include <vector>

#include "semient/linalg.hpp"

namespace semient {

class StateMatrix {
 public:
  StateMatrix() = default;
  /// Throws std::invalid_argument unless `coeffs` is square, non-empty and finite.
  explicit StateMatrix(CMatrix coeffs);

  std::size_t dim() const { return coeffs_.rows(); }
  const CMatrix& coeffs() const { return coeffs_; }
  double norm() const { return coeffs_.frobenius_norm(); }
  bool is_normalized(double tol = 1e-9) const;
  /// Throws std::invalid_argument for the zero state.
  StateMatrix normalized() const;

  friend bool operator==(const StateMatrix&, const StateMatrix&) = default;

 private:
  CMatrix coeffs_;
};

inline double frobenius_distance(const StateMatrix& a, const StateMatrix& b) {
  return frobenius_distance(a.coeffs(), b.coeffs());
}

struct SchmidtDecomposition {
  std::vector<double> alphas;  ///< descending
  CMatrix basis_left;          ///< columns psi_j
  CMatrix basis_right;         ///< columns chi_j

  /// sum_j alpha_j psi_j chi_j^T
  CMatrix reconstruct() const;
  std::size_t rank(double tol = 1e-12) const;
};

SchmidtDecomposition schmidt(const StateMatrix& v, Isa isa = Isa::Auto);

/// Tr_2(v v^H) = C C^H.
CMatrix partial_trace_2(const StateMatrix& v);

/// Eigenvalues of partial_trace_2(v), descending, clamped to [0, 1].
std::vector<double> reduced_spectrum(const StateMatrix& v, Isa isa = Isa::Auto);

/// Entropy of entanglement -sum lambda ln lambda over the reduced spectrum,
/// with 0 ln 0 = 0 (eigenvalues below 1e-15 contribute nothing). With
/// `require_normalized` set, a state whose norm is off by more than 1e-9 is
/// rejected.
double entropy(const StateMatrix& v, bool require_normalized = true, Isa isa = Isa::Auto);

/// Entropy of a given probability spectrum, same conventions as entropy().
double spectrum_entropy(const std::vector<double>& lambdas);

struct ClosestSeparable {
  StateMatrix state;  ///< alpha_1 psi_1 chi_1^T
  double distance;    ///< sqrt(sum_{j>=2} alpha_j^2)
};

ClosestSeparable closest_separable(const StateMatrix& v, Isa isa = Isa::Auto);

/// True iff |nu(v) - ln d| <= tol and every reduced eigenvalue lies within
/// sqrt(4 tol / d) of 1/d.
bool is_maximally_entangled(const StateMatrix& v, double tol = 1e-9, Isa isa = Isa::Auto);

struct DistanceIdentity {
  double lhs;  ///< distance to the closest separable vector
  double rhs;  ///< sqrt(1 - e^{-nu(v)})
};

/// Both sides of D(v, u_s) = sqrt(1 - e^{-nu(v)}); only defined for maximally
/// entangled v (tolerance 1e-9), throws std::domain_error otherwise.
DistanceIdentity corollary_distance_identity(const StateMatrix& v, Isa isa = Isa::Auto);

struct EntanglementReport {
  std::size_t d = 0;
  double entropy = 0.0;
  double max_entropy = 0.0;  ///< ln d
  double separable_distance = 0.0;
  double corollary_distance = 0.0;  ///< sqrt(1 - e^{-entropy})
  std::vector<double> schmidt_spectrum;
  bool maximally_entangled = false;
};

/// Full report for a state; the state is normalized first.
EntanglementReport analyze(const StateMatrix& v, Isa isa = Isa::Auto);

}  // namespace semient
