#include "semient/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "semient/detail/accumulate.hpp"
#include "semient/special.hpp"

namespace semient {

namespace {

cplx integer_power(cplx a, int k) {
  cplx p = 1.0;
  for (int i = 0; i < k; ++i) p *= a;
  return p;
}

double identity_defect(const CMatrix& c) { return max_abs_difference(c, CMatrix::identity(c.rows())); }

}  // namespace

CoherentVector coherent_vector(const SphereModel& model, cplx z, cplx frame_scale) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("coherent_vector: base point must be finite");
  }
  const std::vector<cplx> n = model.normalized_values(z);
  const cplx scale = std::conj(integer_power(frame_scale, model.k()));
  CVector c(model.dim());
  for (std::size_t j = 0; j < model.dim(); ++j) c[j] = scale * std::conj(n[j]);
  return {std::move(c), z, frame_scale, model.k()};
}

cplx evaluate_covector(const SphereModel& model, const CVector& section, cplx z, cplx frame_scale) {
  if (section.dim() != model.dim()) {
    throw std::invalid_argument(
        fmt::format("evaluate_covector: section has {} coefficients, H_k has dimension {}", section.dim(), model.dim()));
  }
  const std::vector<cplx> n = model.normalized_values(z);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < n.size(); ++j) acc += section[j] * n[j];
  return integer_power(frame_scale, model.k()) * acc;
}

StateMatrix pair_coherent(const CoherentVector& u, const CoherentVector& w) {
  if (u.k != w.k || u.coeffs.dim() != w.coeffs.dim()) {
    throw std::invalid_argument(fmt::format("pair_coherent: levels differ (k={} and k={})", u.k, w.k));
  }
  return StateMatrix(CMatrix::outer(u.coeffs, w.coeffs));
}

const char* model_name(ModelKind m) { return m == ModelKind::Sphere ? "sphere" : "torus"; }

const char* submanifold_name(Submanifold s) { return s == Submanifold::Antidiagonal ? "antidiagonal" : "circle"; }

LagrangianState antidiagonal_state(const SphereModel& model, const SphereQuadrature& quad, Isa isa) {
  if (model.k() != quad.k()) {
    throw std::invalid_argument(fmt::format("antidiagonal_state: quadrature built for k={}, model has k={}", quad.k(),
                                            model.k()));
  }
  // sigma(z) = conj(z) is theta -> -theta at fixed t
  const auto& nodes = quad.chart_nodes();
  const std::size_t m = static_cast<std::size_t>(quad.angular_count());
  CMatrix c = detail::accumulate_blocks(model.dim(), quad.radial_rule().size(), [&](std::size_t a) {
    CMatrix ring = detail::accumulate_antidiagonal_by(
        model.dim(), m,
        [&](std::size_t b, std::vector<cplx>& here, std::vector<cplx>& there) {
          const ChartNode& node = nodes[a * m + b];
          model.chart_values(node.t, node.theta, here);
          model.chart_values(node.t, -node.theta, there);
          return 1.0;
        },
        isa);
    return std::pair{nodes[a * m].weight, std::move(ring)};
  });
  LagrangianState s;
  s.identity_residual = identity_defect(c);
  s.coeffs = StateMatrix(std::move(c));
  s.raw_norm = s.coeffs.norm();
  s.provenance = {ModelKind::Sphere, Submanifold::Antidiagonal, model.k(), 0.0,
                  fmt::format("gauss-legendre {} x trapezoid {}", quad.radial_count(), quad.angular_count())};
  return s;
}

LagrangianState antidiagonal_state(const TorusBasis& basis, const TorusQuadrature& quad, Isa isa) {
  const TorusModel& model = basis.model();
  if (model.k() != quad.k() || model.mu() != quad.mu()) {
    throw std::invalid_argument("antidiagonal_state: torus quadrature does not match the basis");
  }
  CMatrix c = detail::accumulate_antidiagonal(basis, quad.nodes(), isa);
  LagrangianState s;
  s.identity_residual = identity_defect(c);
  s.coeffs = StateMatrix(std::move(c));
  s.raw_norm = s.coeffs.norm();
  s.provenance = {ModelKind::Torus, Submanifold::Antidiagonal, model.k(), model.mu(),
                  fmt::format("trapezoid {} x gauss-legendre {}, theta n_max {}", quad.x_count(), quad.y_count(),
                              quad.truncation().n_max)};
  return s;
}

LagrangianState circle_state_quadrature(const SphereModel& model, int nodes, Isa isa) {
  const int k = model.k();
  if (nodes < 2 * k + 2) {
    throw std::invalid_argument(
        fmt::format("circle_state_quadrature: {} nodes below the exactness requirement M >= 2k+2 = {}", nodes,
                    2 * k + 2));
  }
  // |z| = 1 is t = 1/2
  const double w = 2.0 * std::numbers::pi / nodes;
  CMatrix c = detail::accumulate_antidiagonal_by(
      model.dim(), static_cast<std::size_t>(nodes),
      [&](std::size_t b, std::vector<cplx>& here, std::vector<cplx>& there) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(b) / nodes;
        model.chart_values(0.5, theta, here);
        model.chart_values(0.5, -theta, there);
        return w;
      },
      isa);
  LagrangianState s;
  s.coeffs = StateMatrix(std::move(c));
  s.raw_norm = s.coeffs.norm();
  s.provenance = {ModelKind::Sphere, Submanifold::Circle, k, 0.0, fmt::format("trapezoid {} on |z| = 1", nodes)};
  return s;
}

LagrangianState circle_state_closed_form(int k) {
  if (k < 1) throw std::invalid_argument(fmt::format("circle_state_closed_form: k must be >= 1, got {}", k));
  const double log_scale = log_factorial(k) - 0.5 * log_factorial(2 * k);
  std::vector<double> diag(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) diag[j] = std::exp(log_binomial(k, j) + log_scale);
  LagrangianState s;
  s.coeffs = StateMatrix(CMatrix::diagonal(diag));
  s.raw_norm = s.coeffs.norm();
  s.provenance = {ModelKind::Sphere, Submanifold::Circle, k, 0.0, "closed form"};
  return s;
}

std::vector<double> circle_diagonal_closed_form(int k) {
  if (k < 1) throw std::invalid_argument(fmt::format("circle_diagonal_closed_form: k must be >= 1, got {}", k));
  std::vector<double> d(static_cast<std::size_t>(k) + 1);
  const double log_lead = std::log(std::numbers::pi) - (k - 1) * std::numbers::ln2 + std::log(k + 1.0);
  for (int j = 0; j <= k; ++j) d[j] = std::exp(log_lead + log_binomial(k, j));
  return d;
}

double circle_entropy_closed_form(int k) {
  if (k < 1) throw std::invalid_argument(fmt::format("circle_entropy_closed_form: k must be >= 1, got {}", k));
  const double log_central = log_binomial(2 * k, k);
  CompensatedSum s;
  for (int j = 0; j <= k; ++j) {
    const double log_p = 2.0 * log_binomial(k, j) - log_central;
    s.add(-std::exp(log_p) * log_p);
  }
  return s.value();
}

}  // namespace semient
