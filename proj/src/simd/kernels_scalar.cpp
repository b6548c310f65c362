#include "semient/simd/kernels.hpp"

#include <cassert>
#include <cstddef>

// Arithmetic is spelled out on real/imaginary parts so the reference path
// does not depend on the library's complex multiply (which adds NaN recovery).

namespace semient::simd::scalar {

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  assert(x.size() == y.size());
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm_sq(std::span<const cplx> x) {
  double acc = 0.0;
  for (const cplx& v : x) {
    acc += v.real() * v.real() + v.imag() * v.imag();
  }
  return acc;
}

void axpy_conj(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr + ai * xi), y[i].imag() + (ai * xr - ar * xi)};
  }
}

void rotate(std::span<cplx> x, std::span<cplx> y, double c, double s, cplx p) {
  assert(x.size() == y.size());
  const double pr = p.real(), pi = p.imag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    const double qr = pr * yr - pi * yi;
    const double qi = pr * yi + pi * yr;
    x[i] = {c * xr - s * qr, c * xi - s * qi};
    y[i] = {s * xr + c * qr, s * xi + c * qi};
  }
}

}  // namespace semient::simd::scalar
