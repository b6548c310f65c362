#pragma once

// Builders for the vectors studied on the two models: coherent vectors and
// their pairs, the antidiagonal Lagrangian states, and the state of the
// circle |z| = 1 on the sphere.

#include <string>

#include "semient/entanglement.hpp"
#include "semient/sphere.hpp"
#include "semient/torus.hpp"

namespace semient {

/// u_xi for xi = frame_scale times the unit-norm covector at base_point, so that
/// <s, u_xi> = xi^k(s(base_point)) and c_j = conj(frame_scale)^k conj(phi_j(z)) / (1+|z|^2)^{k/2}.
struct CoherentVector {
  CVector coeffs;
  cplx base_point;
  cplx frame_scale;
  int k = 0;
};

CoherentVector coherent_vector(const SphereModel& model, cplx z, cplx frame_scale = 1.0);

/// xi^k(s(z)) for s = sum_j s_j phi_j, the value the coherent vector reproduces.
cplx evaluate_covector(const SphereModel& model, const CVector& section, cplx z, cplx frame_scale = 1.0);

/// u (x) w as a coefficient matrix; throws std::invalid_argument when the levels differ.
StateMatrix pair_coherent(const CoherentVector& u, const CoherentVector& w);

enum class ModelKind { Sphere, Torus };
enum class Submanifold { Antidiagonal, Circle };

const char* model_name(ModelKind m);
const char* submanifold_name(Submanifold s);

struct Provenance {
  ModelKind model = ModelKind::Sphere;
  Submanifold submanifold = Submanifold::Antidiagonal;
  int k = 0;
  double mu = 0.0;
  std::string quadrature;  ///< human-readable node description
};

struct LagrangianState {
  StateMatrix coeffs;  ///< unnormalized u_Lambda
  Provenance provenance;
  double raw_norm = 0.0;
  /// max |coeffs - I| for antidiagonal states; 0 for the circle state.
  double identity_residual = 0.0;

  StateMatrix normalized() const { return coeffs.normalized(); }
};

LagrangianState antidiagonal_state(const SphereModel& model, const SphereQuadrature& quad, Isa isa = Isa::Auto);
LagrangianState antidiagonal_state(const TorusBasis& basis, const TorusQuadrature& quad, Isa isa = Isa::Auto);

/// Trapezoid rule with M nodes in Theta for the circle z = e^{i Theta}, d mu = d Theta.
/// Throws std::invalid_argument for M < 2k + 2.
LagrangianState circle_state_quadrature(const SphereModel& model, int nodes, Isa isa = Isa::Auto);

/// The normalized circle state diag(C(k, j) k! / sqrt((2k)!)); throws for k < 1.
LagrangianState circle_state_closed_form(int k);

/// Diagonal of the unnormalized circle state, pi / 2^{k-1} (k+1)! / (j! (k-j)!).
std::vector<double> circle_diagonal_closed_form(int k);

/// -sum_j p_j ln p_j with p_j = C(k, j)^2 / C(2k, k).
double circle_entropy_closed_form(int k);

}  // namespace semient
