#include "semient/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "semient/special.hpp"

namespace semient {

StateMatrix::StateMatrix(CMatrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() == 0 || !coeffs_.square()) {
    throw std::invalid_argument(
        fmt::format("StateMatrix: coefficients must be a non-empty square matrix, got {}x{}", coeffs_.rows(),
                    coeffs_.cols()));
  }
  if (!coeffs_.all_finite()) throw std::invalid_argument("StateMatrix: coefficients contain NaN or Inf");
}

bool StateMatrix::is_normalized(double tol) const { return std::fabs(norm() - 1.0) <= tol; }

StateMatrix StateMatrix::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("StateMatrix: cannot normalize the zero state");
  CMatrix c = coeffs_;
  c *= 1.0 / n;
  return StateMatrix(std::move(c));
}

CMatrix SchmidtDecomposition::reconstruct() const {
  const std::size_t d = alphas.size();
  CMatrix c(d, d);
  for (std::size_t m = 0; m < d; ++m) {
    if (alphas[m] == 0.0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      const cplx a = alphas[m] * basis_left(j, m);
      for (std::size_t l = 0; l < d; ++l) c(j, l) += a * basis_right(l, m);
    }
  }
  return c;
}

std::size_t SchmidtDecomposition::rank(double tol) const {
  return static_cast<std::size_t>(std::count_if(alphas.begin(), alphas.end(), [&](double a) { return a > tol; }));
}

SchmidtDecomposition schmidt(const StateMatrix& v, Isa isa) {
  SvdResult s = svd(v.coeffs(), isa);
  return {std::move(s.singular_values), std::move(s.left_unitary), s.right_unitary.conjugate()};
}

CMatrix partial_trace_2(const StateMatrix& v) {
  const CMatrix& c = v.coeffs();
  const std::size_t d = v.dim();
  CMatrix rho(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cplx acc = 0.0;
      for (std::size_t l = 0; l < d; ++l) acc += c(i, l) * std::conj(c(j, l));
      rho(i, j) = acc;
      rho(j, i) = std::conj(acc);
    }
    rho(i, i) = rho(i, i).real();
  }
  return rho;
}

std::vector<double> reduced_spectrum(const StateMatrix& v, Isa isa) {
  EigenResult e = hermitian_eigen(partial_trace_2(v), isa);
  for (double& l : e.eigenvalues) l = std::clamp(l, 0.0, 1.0);
  return e.eigenvalues;
}

double spectrum_entropy(const std::vector<double>& lambdas) {
  CompensatedSum s;
  for (double l : lambdas) {
    l = std::clamp(l, 0.0, 1.0);
    if (l < 1e-15) continue;
    s.add(-l * std::log(l));
  }
  return std::max(0.0, s.value());
}

double entropy(const StateMatrix& v, bool require_normalized, Isa isa) {
  if (require_normalized && !v.is_normalized(1e-9)) {
    throw std::invalid_argument(
        fmt::format("entropy: state is not normalized (norm = {:.17g}, tolerance 1e-9)", v.norm()));
  }
  return spectrum_entropy(reduced_spectrum(v, isa));
}

ClosestSeparable closest_separable(const StateMatrix& v, Isa isa) {
  const SchmidtDecomposition sd = schmidt(v, isa);
  const std::size_t d = v.dim();
  CMatrix u(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t l = 0; l < d; ++l) u(j, l) = sd.alphas[0] * sd.basis_left(j, 0) * sd.basis_right(l, 0);
  CompensatedSum tail;
  for (std::size_t m = 1; m < d; ++m) tail.add(sd.alphas[m] * sd.alphas[m]);
  return {StateMatrix(std::move(u)), std::sqrt(std::max(0.0, tail.value()))};
}

namespace {

bool flat_and_maximal(const std::vector<double>& lambdas, double tol) {
  const double d = static_cast<double>(lambdas.size());
  const double nu = spectrum_entropy(lambdas);
  if (std::fabs(nu - std::log(d)) > tol) return false;
  const double flat_tol = std::sqrt(4.0 * tol / d);
  return std::all_of(lambdas.begin(), lambdas.end(), [&](double l) { return std::fabs(l - 1.0 / d) <= flat_tol; });
}

}  // namespace

bool is_maximally_entangled(const StateMatrix& v, double tol, Isa isa) {
  if (!v.is_normalized(1e-9)) {
    throw std::invalid_argument(
        fmt::format("is_maximally_entangled: state is not normalized (norm = {:.17g})", v.norm()));
  }
  return flat_and_maximal(reduced_spectrum(v, isa), tol);
}

DistanceIdentity corollary_distance_identity(const StateMatrix& v, Isa isa) {
  if (!v.is_normalized(1e-9)) {
    throw std::invalid_argument(
        fmt::format("corollary_distance_identity: state is not normalized (norm = {:.17g})", v.norm()));
  }
  const auto lambdas = reduced_spectrum(v, isa);
  if (!flat_and_maximal(lambdas, 1e-9)) {
    throw std::domain_error(fmt::format(
        "corollary_distance_identity: state is not maximally entangled (entropy {:.17g}, ln d = {:.17g})",
        spectrum_entropy(lambdas), std::log(static_cast<double>(v.dim()))));
  }
  const double nu = spectrum_entropy(lambdas);
  return {closest_separable(v, isa).distance, std::sqrt(-std::expm1(-nu))};
}

EntanglementReport analyze(const StateMatrix& v, Isa isa) {
  const StateMatrix u = v.normalized();
  EntanglementReport r;
  r.d = u.dim();
  const auto lambdas = reduced_spectrum(u, isa);
  r.entropy = spectrum_entropy(lambdas);
  r.max_entropy = std::log(static_cast<double>(r.d));
  const SchmidtDecomposition sd = schmidt(u, isa);
  r.schmidt_spectrum = sd.alphas;
  CompensatedSum tail;
  for (std::size_t m = 1; m < r.d; ++m) tail.add(sd.alphas[m] * sd.alphas[m]);
  r.separable_distance = std::sqrt(std::max(0.0, tail.value()));
  r.corollary_distance = std::sqrt(-std::expm1(-r.entropy));
  r.maximally_entangled = flat_and_maximal(lambdas, 1e-9);
  return r;
}

}  // namespace semient
