#include "semient/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "semient/detail/accumulate.hpp"

namespace semient {

namespace {

constexpr double kPi = std::numbers::pi;

// Raw theta functions in a unit-norm frame; used for the Gram of the theta basis.
class ThetaFamily {
 public:
  ThetaFamily(const TorusModel& model, const ThetaTruncation& trunc) : model_(model), trunc_(trunc) {}
  std::size_t dim() const { return model_.dim(); }
  std::vector<cplx> normalized_values(cplx z) const {
    std::vector<cplx> out(dim());
    for (int j = 1; j <= model_.k(); ++j) out[j - 1] = theta_weighted(model_, j, z, trunc_);
    return out;
  }
  static cplx involution(cplx z) { return -std::conj(z); }

 private:
  const TorusModel& model_;
  const ThetaTruncation& trunc_;
};

void require_strip(const ThetaTruncation& trunc, double y) {
  if (y < trunc.y_lo || y > trunc.y_hi) {
    throw std::invalid_argument(
        fmt::format("theta_eval: Im z = {} outside the truncation strip [{}, {}]", y, trunc.y_lo, trunc.y_hi));
  }
}

std::vector<WeightedNode> product_nodes(int nx, const QuadratureRule& yrule) {
  const QuadratureRule xrule = periodic_trapezoid(nx, 1.0);
  std::vector<WeightedNode> nodes;
  nodes.reserve(static_cast<std::size_t>(nx) * yrule.size());
  for (std::size_t b = 0; b < yrule.size(); ++b)
    for (int a = 0; a < nx; ++a) nodes.push_back({{xrule.nodes[a], yrule.nodes[b]}, xrule.weights[a] * yrule.weights[b]});
  return nodes;
}

}  // namespace

TorusModel::TorusModel(int k, double mu) : k_(k), mu_(mu) {
  if (k < 3) throw std::invalid_argument(fmt::format("TorusModel: level k must be >= 3, got {}", k));
  if (!std::isfinite(mu)) throw std::invalid_argument("TorusModel: characteristic mu must be finite");
}

double TorusModel::offset(int j) const {
  if (j < 1 || j > k_) throw std::out_of_range(fmt::format("TorusModel: j={} outside 1..{}", j, k_));
  const double q = (mu_ + j) / k_;
  return q - std::floor(q);
}

double theta_tail_bound(int k, int n_max, double y_lo, double y_hi) {
  // n > n_max:  |term| <= exp(-pi k n (n + 2 y_lo))
  // n < -n_max: |term| <= exp(-pi k u (u - 2 y_hi)),  u = |n| - 1 >= n_max
  double bound = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double a = n_max + 1.0 + i;
    const double b = n_max + static_cast<double>(i);
    const double t = std::exp(-kPi * k * a * (a + 2.0 * y_lo)) + std::exp(-kPi * k * b * (b - 2.0 * y_hi));
    bound += t;
    if (t <= 1e-20 * bound || t == 0.0) break;
  }
  return bound;
}

ThetaTruncation theta_truncation(const TorusModel& model, double y_lo, double y_hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument(fmt::format("theta_truncation: tolerance must be > 0, got {}", tol));
  if (!(y_lo <= y_hi) || !std::isfinite(y_lo) || !std::isfinite(y_hi)) {
    throw std::invalid_argument("theta_truncation: invalid strip");
  }
  // The majorants above are monotone once n_max exceeds 2 max |y|.
  const int start = static_cast<int>(std::floor(2.0 * std::max(std::fabs(y_lo), std::fabs(y_hi)))) + 1;
  for (int n = start; n <= ThetaTruncation::kHardCap; ++n) {
    const double bound = theta_tail_bound(model.k(), n, y_lo, y_hi);
    if (bound <= tol) return {n, bound, y_lo, y_hi};
  }
  throw std::runtime_error(fmt::format(
      "theta_truncation: tolerance {:.3e} on Im z in [{}, {}] needs more than {} terms per side", tol, y_lo, y_hi,
      ThetaTruncation::kHardCap));
}

cplx theta_eval(const TorusModel& model, int j, cplx z, double tol) {
  return theta_eval(model, j, z, theta_truncation(model, z.imag(), z.imag(), tol));
}

cplx theta_eval(const TorusModel& model, int j, cplx z, const ThetaTruncation& trunc) {
  require_strip(trunc, z.imag());
  const double q = model.offset(j);
  const double k = model.k();
  const double x = z.real(), y = z.imag();
  double re = 0.0, im = 0.0;
  for (int n = -trunc.n_max; n <= trunc.n_max; ++n) {
    const double m = n + q;
    const double mag = std::exp(-kPi * k * m * m - 2.0 * kPi * k * m * y);
    const double ph = 2.0 * kPi * k * m * x;
    re += mag * std::cos(ph);
    im += mag * std::sin(ph);
  }
  return {re, im};
}

cplx theta_weighted(const TorusModel& model, int j, cplx z, const ThetaTruncation& trunc) {
  require_strip(trunc, z.imag());
  const double q = model.offset(j);
  const double k = model.k();
  const double x = z.real(), y = z.imag();
  double re = 0.0, im = 0.0;
  for (int n = -trunc.n_max; n <= trunc.n_max; ++n) {
    const double m = n + q;
    const double mag = std::exp(-kPi * k * (m + y) * (m + y));
    const double ph = 2.0 * kPi * k * m * x;
    re += mag * std::cos(ph);
    im += mag * std::sin(ph);
  }
  return {re, im};
}

cplx metric_weight(const TorusModel& model, cplx z) {
  const cplx diff = z - std::conj(z);
  return std::exp(0.5 * model.k() * kPi * diff * diff);
}

TorusQuadrature::TorusQuadrature(const TorusModel& model, TorusQuadratureOptions opts, Isa isa)
    : k_(model.k()), mu_(model.mu()), theta_tol_(opts.theta_tol) {
  trunc_ = domain_truncation(model, opts.theta_tol);
  const int min_x = min_x_nodes(k_, trunc_.n_max);
  x_count_ = opts.x_nodes == 0 ? min_x : opts.x_nodes;
  if (x_count_ < min_x) {
    throw std::invalid_argument(fmt::format(
        "TorusQuadrature: {} x-nodes below the exactness requirement 2k(2 n_max + 1) = {} (n_max = {})", x_count_,
        min_x, trunc_.n_max));
  }
  const ThetaFamily family(model, trunc_);
  if (opts.y_nodes > 0) {
    y_count_ = opts.y_nodes;
    nodes_ = product_nodes(x_count_, gauss_legendre(y_count_, 0.0, 1.0));
    return;
  }
  int ny = std::max(1, opts.y_start);
  auto coarse_nodes = product_nodes(x_count_, gauss_legendre(ny, 0.0, 1.0));
  CMatrix coarse = detail::accumulate_gram(family, coarse_nodes, isa);
  while (true) {
    if (2 * ny > opts.y_max) {
      throw std::runtime_error(fmt::format(
          "TorusQuadrature: y-direction Gauss-Legendre did not settle below {:.1e} within {} nodes (last change "
          "{:.3e})",
          opts.refine_tol, opts.y_max, refine_change_));
    }
    auto fine_nodes = product_nodes(x_count_, gauss_legendre(2 * ny, 0.0, 1.0));
    CMatrix fine = detail::accumulate_gram(family, fine_nodes, isa);
    refine_change_ = max_abs_difference(fine, coarse);
    ny *= 2;
    if (refine_change_ < opts.refine_tol) {
      y_count_ = ny;
      nodes_ = std::move(fine_nodes);
      return;
    }
    coarse = std::move(fine);
  }
}

namespace {

void require_matching(const TorusModel& model, const TorusQuadrature& quad) {
  if (model.k() != quad.k() || model.mu() != quad.mu()) {
    throw std::invalid_argument(fmt::format("torus quadrature built for (k={}, mu={}), model has (k={}, mu={})",
                                            quad.k(), quad.mu(), model.k(), model.mu()));
  }
}

}  // namespace

CMatrix torus_gram(const TorusModel& model, const TorusQuadrature& quad, Isa isa) {
  require_matching(model, quad);
  return detail::accumulate_gram(ThetaFamily(model, quad.truncation()), quad.nodes(), isa);
}

TorusBasis::TorusBasis(TorusModel model, ThetaTruncation trunc, double theta_tol, std::vector<double> norms)
    : model_(model), trunc_(trunc), tol_(theta_tol), norms_(std::move(norms)) {
  if (norms_.size() != model_.dim()) throw std::invalid_argument("TorusBasis: one norm per theta function required");
}

const ThetaTruncation& TorusBasis::truncation_for(double y, ThetaTruncation& scratch) const {
  if (y >= trunc_.y_lo && y <= trunc_.y_hi) return trunc_;
  scratch = theta_truncation(model_, y, y, tol_);
  return scratch;
}

cplx TorusBasis::eval(int j, cplx z) const {
  ThetaTruncation scratch;
  const ThetaTruncation& t = truncation_for(z.imag(), scratch);
  return theta_eval(model_, j, z, t) / norms_.at(j - 1);
}

std::vector<cplx> TorusBasis::normalized_values(cplx z) const {
  ThetaTruncation scratch;
  const ThetaTruncation& t = truncation_for(z.imag(), scratch);
  std::vector<cplx> out(dim());
  for (int j = 1; j <= model_.k(); ++j) out[j - 1] = theta_weighted(model_, j, z, t) / norms_[j - 1];
  return out;
}

TorusBasis orthonormal_basis(const TorusModel& model, const TorusQuadrature& quad, Isa isa) {
  const CMatrix g = torus_gram(model, quad, isa);
  const std::size_t d = model.dim();
  double off = 0.0;
  double dmin = g(0, 0).real(), dmax = dmin;
  for (std::size_t j = 0; j < d; ++j) {
    dmin = std::min(dmin, g(j, j).real());
    dmax = std::max(dmax, g(j, j).real());
    for (std::size_t l = 0; l < d; ++l)
      if (l != j) off = std::max(off, std::abs(g(j, l)));
  }
  if (off > 1e-8 || dmax - dmin > 1e-8 || !(dmin > 0.0)) {
    throw std::runtime_error(fmt::format(
        "orthonormal_basis: theta Gram for k={}, mu={} is not orthogonal with equal norms (max off-diagonal "
        "{:.3e}, diagonal spread {:.3e})",
        model.k(), model.mu(), off, dmax - dmin));
  }
  std::vector<double> norms(d);
  for (std::size_t j = 0; j < d; ++j) norms[j] = std::sqrt(g(j, j).real());
  return TorusBasis(model, quad.truncation(), quad.theta_tol(), std::move(norms));
}

CMatrix basis_gram(const TorusBasis& basis, const TorusQuadrature& quad, Isa isa) {
  require_matching(basis.model(), quad);
  return detail::accumulate_gram(basis, quad.nodes(), isa);
}

}  // namespace semient
