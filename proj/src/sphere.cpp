#include "semient/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "semient/detail/accumulate.hpp"
#include "semient/special.hpp"

namespace semient {

SphereModel::SphereModel(int k) : k_(k) {
  if (k < 1) throw std::invalid_argument(fmt::format("SphereModel: level k must be >= 1, got {}", k));
  log_amplitude_.resize(dim());
  amplitude_.resize(dim());
  for (int j = 0; j <= k; ++j) {
    log_amplitude_[j] = 0.5 * (std::log(static_cast<double>(k) + 1.0) + log_binomial(k, j));
    const auto exact = binomial_exact(k, j);
    amplitude_[j] = exact ? std::sqrt((k + 1.0) * static_cast<double>(*exact)) : std::exp(log_amplitude_[j]);
  }
}

cplx SphereModel::basis_eval(int j, cplx z) const {
  if (j < 0 || j > k_) throw std::out_of_range(fmt::format("SphereModel::basis_eval: j={} outside 0..{}", j, k_));
  if (j == 0) return std::exp(log_amplitude_[0]);
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  return std::polar(std::exp(log_amplitude_[j] + j * std::log(r)), j * std::arg(z));
}

std::vector<cplx> SphereModel::normalized_values(cplx z) const {
  std::vector<cplx> out(dim());
  const double r = std::abs(z);
  if (r == 0.0) {
    out[0] = std::exp(log_amplitude_[0]);
    return out;
  }
  // |n_j| = amp_j s^j c^{k-j}, s = r / sqrt(1+r^2), c = 1 / sqrt(1+r^2); both logs
  // are formed without cancellation on either side of r = 1.
  double log_s, log_c;
  if (r <= 1.0) {
    log_c = -0.5 * std::log1p(r * r);
    log_s = std::log(r) + log_c;
  } else {
    log_s = -0.5 * std::log1p(1.0 / (r * r));
    log_c = log_s - std::log(r);
  }
  const double theta = std::arg(z);
  for (int j = 0; j <= k_; ++j) {
    out[j] = std::polar(std::exp(log_amplitude_[j] + j * log_s + (k_ - j) * log_c), j * theta);
  }
  return out;
}

void SphereModel::chart_values(double t, double theta, std::vector<cplx>& out) const {
  out.resize(dim());
  const double u = 1.0 - t;
  for (int j = 0; j <= k_; ++j) {
    const double mag = amplitude_[j] * std::pow(t, 0.5 * j) * std::pow(u, 0.5 * (k_ - j));
    out[j] = std::polar(mag, j * theta);
  }
}

CMatrix SphereModel::pairing_matrix(cplx z) const {
  const std::vector<cplx> n = normalized_values(z);
  CMatrix h(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t l = 0; l < dim(); ++l) h(j, l) = n[j] * std::conj(n[l]);
  return h;
}

SphereQuadrature::SphereQuadrature(const SphereModel& model, int radial, int angular) : k_(model.k()) {
  if (radial == 0) radial = min_radial(k_);
  if (angular == 0) angular = min_angular(k_);
  if (radial < min_radial(k_)) {
    throw std::invalid_argument(fmt::format(
        "SphereQuadrature: {} radial nodes cannot integrate the degree-{} polynomial in t exactly (need >= {})",
        radial, k_, min_radial(k_)));
  }
  if (angular < min_angular(k_)) {
    throw std::invalid_argument(
        fmt::format("SphereQuadrature: {} angular nodes below the exactness requirement M >= 2k+2 = {}", angular,
                    min_angular(k_)));
  }
  angular_ = angular;
  radial_ = gauss_legendre(radial, 0.0, 1.0);
  nodes_.reserve(radial_.size() * angular_);
  chart_.reserve(radial_.size() * angular_);
  for (std::size_t a = 0; a < radial_.size(); ++a) {
    const double t = radial_.nodes[a];
    const double r = std::sqrt(t / (1.0 - t));
    const double w = radial_.weights[a] / angular_;
    for (int b = 0; b < angular_; ++b) {
      const double theta = 2.0 * std::numbers::pi * b / angular_;
      nodes_.push_back({std::polar(r, theta), w});
      chart_.push_back({t, theta, w});
    }
  }
}

namespace {

void require_matching(const SphereModel& model, const SphereQuadrature& quad) {
  if (model.k() != quad.k()) {
    throw std::invalid_argument(
        fmt::format("sphere quadrature was built for k={}, model has k={}", quad.k(), model.k()));
  }
}

}  // namespace

CMatrix gram_matrix(const SphereModel& model, const SphereQuadrature& quad, Isa isa) {
  require_matching(model, quad);
  // ring sums first, then a compensated sum over rings
  const auto& nodes = quad.chart_nodes();
  const std::size_t m = static_cast<std::size_t>(quad.angular_count());
  return detail::accumulate_blocks(model.dim(), quad.radial_rule().size(), [&](std::size_t a) {
    CMatrix ring = detail::accumulate_gram_by(
        model.dim(), m,
        [&](std::size_t b, std::vector<cplx>& n) {
          const ChartNode& node = nodes[a * m + b];
          model.chart_values(node.t, node.theta, n);
          return 1.0;
        },
        isa);
    return std::pair{nodes[a * m].weight, std::move(ring)};
  });
}

CMatrix monomial_gram(const SphereModel& model, const SphereQuadrature& quad) {
  require_matching(model, quad);
  const int k = model.k();
  CMatrix g(model.dim(), model.dim());
  std::vector<cplx> m(model.dim());
  std::vector<cplx> n;
  for (const ChartNode& node : quad.chart_nodes()) {
    // z^j / (1+|z|^2)^{k/2} = n_j / sqrt((k+1) C(k, j))
    model.chart_values(node.t, node.theta, n);
    for (int j = 0; j <= k; ++j) m[j] = n[j] / model.amplitude(j);
    for (int j = 0; j <= k; ++j)
      for (int l = 0; l <= k; ++l) g(j, l) += node.weight * m[j] * std::conj(m[l]);
  }
  return g;
}

}  // namespace semient
