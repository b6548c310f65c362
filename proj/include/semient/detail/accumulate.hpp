#pragma once

// Node-wise accumulation shared by the sphere and torus models. A basis type
// provides dim(), normalized_values(z) (basis values in a unit-norm frame) and
// involution(z). Nodes are reduced in their stored order.

#include <cmath>
#include <vector>

#include "semient/linalg.hpp"
#include "semient/quadrature.hpp"

namespace semient::detail {

/// G_{jl} = sum_i w_i n_j conj(n_l), where values(i, n) fills n and returns w_i.
template <class Values>
CMatrix accumulate_gram_by(std::size_t d, std::size_t count, Values&& values, Isa isa) {
  const simd::Kernels& kern = simd::kernels(isa);
  CMatrix g(d, d);
  std::vector<cplx> n(d);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = values(i, n);
    for (std::size_t j = 0; j < d; ++j) kern.axpy_conj(w * n[j], n, g.row(j));
  }
  return g;
}

/// C_{jl} = sum_i w_i conj(here_j there_l), where values(i, here, there) returns w_i.
template <class Values>
CMatrix accumulate_antidiagonal_by(std::size_t d, std::size_t count, Values&& values, Isa isa) {
  const simd::Kernels& kern = simd::kernels(isa);
  CMatrix c(d, d);
  std::vector<cplx> here(d), there(d);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = values(i, here, there);
    for (std::size_t j = 0; j < d; ++j) kern.axpy_conj(w * std::conj(here[j]), there, c.row(j));
  }
  return c;
}

/// Entrywise Neumaier-compensated sum of matrices.
class CompensatedMatrixSum {
 public:
  CompensatedMatrixSum(std::size_t r, std::size_t c) : sum_(r, c), comp_(r, c) {}

  void add(const CMatrix& m, double scale) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const cplx x = scale * m(i, j);
        auto& s = reinterpret_cast<double(&)[2]>(sum_(i, j));
        auto& c = reinterpret_cast<double(&)[2]>(comp_(i, j));
        step(s[0], c[0], x.real());
        step(s[1], c[1], x.imag());
      }
  }

  CMatrix value() const {
    CMatrix out = sum_;
    for (std::size_t i = 0; i < out.rows(); ++i)
      for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += comp_(i, j);
    return out;
  }

 private:
  static void step(double& s, double& c, double x) {
    const double t = s + x;
    c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }

  CMatrix sum_;
  CMatrix comp_;
};

/// Sum over outer blocks of w_o * (inner accumulation), the outer level
/// compensated. make(o) returns {w_o, block matrix}.
template <class Block>
CMatrix accumulate_blocks(std::size_t d, std::size_t outer, Block&& make) {
  CompensatedMatrixSum total(d, d);
  for (std::size_t o = 0; o < outer; ++o) {
    auto [w, m] = make(o);
    total.add(m, w);
  }
  return total.value();
}

/// G_{jl} = sum_nodes w n_j(z) conj(n_l(z))
template <class Basis>
CMatrix accumulate_gram(const Basis& basis, const std::vector<WeightedNode>& nodes, Isa isa) {
  return accumulate_gram_by(
      basis.dim(), nodes.size(),
      [&](std::size_t i, std::vector<cplx>& n) {
        n = basis.normalized_values(nodes[i].point);
        return nodes[i].weight;
      },
      isa);
}

/// C_{jl} = sum_nodes w conj(n_j(z) n_l(sigma(z))): the pairing of phi_j(z) with
/// phi_l(sigma z) through the covariant-constant section, conjugated and integrated.
template <class Basis>
CMatrix accumulate_antidiagonal(const Basis& basis, const std::vector<WeightedNode>& nodes, Isa isa) {
  return accumulate_antidiagonal_by(
      basis.dim(), nodes.size(),
      [&](std::size_t i, std::vector<cplx>& here, std::vector<cplx>& there) {
        here = basis.normalized_values(nodes[i].point);
        there = basis.normalized_values(Basis::involution(nodes[i].point));
        return nodes[i].weight;
      },
      isa);
}

}  // namespace semient::detail
