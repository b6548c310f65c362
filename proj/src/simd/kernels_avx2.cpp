// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// is only entered after the dispatcher has confirmed CPU support.

#include "semient/simd/kernels.hpp"

#include <immintrin.h>

#include <cassert>
#include <cstddef>

namespace semient::simd::avx2 {
namespace {

// One __m256d holds two complex values laid out as [re0, im0, re1, im1].
inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const double* xp = raw(x.data());
  const double* yp = raw(y.data());
  // re_acc collects [xr*yr, xi*yi, ...], im_acc collects [xr*yi, xi*yr, ...].
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    re_acc = _mm256_fmadd_pd(xv, yv, re_acc);
    im_acc = _mm256_fmadd_pd(xv, swap_pairs(yv), im_acc);
  }
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(re_acc);
  double im = hsum(_mm256_mul_pd(im_acc, sign));
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm_sq(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const double* xp = raw(x.data());
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    out += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return out;
}

void axpy_conj(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const double ar = alpha.real(), ai = alpha.imag();
  const __m256d a_re = _mm256_setr_pd(ar, -ar, ar, -ar);
  const __m256d a_im = _mm256_set1_pd(ai);
  const double* xp = raw(x.data());
  double* yp = raw(y.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    // [ar*xr + ai*xi, -ar*xi + ai*xr]
    yv = _mm256_add_pd(yv, _mm256_fmadd_pd(xv, a_re, _mm256_mul_pd(swap_pairs(xv), a_im)));
    _mm256_storeu_pd(yp + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr + ai * xi), y[i].imag() + (ai * xr - ar * xi)};
  }
}

void rotate(std::span<cplx> x, std::span<cplx> y, double c, double s, cplx p) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const double pr = p.real(), pi = p.imag();
  const __m256d p_re = _mm256_set1_pd(pr);
  const __m256d p_im = _mm256_setr_pd(-pi, pi, -pi, pi);
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_set1_pd(s);
  double* xp = raw(x.data());
  double* yp = raw(y.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    const __m256d q = _mm256_fmadd_pd(yv, p_re, _mm256_mul_pd(swap_pairs(yv), p_im));
    _mm256_storeu_pd(xp + 2 * i, _mm256_fnmadd_pd(sv, q, _mm256_mul_pd(cv, xv)));
    _mm256_storeu_pd(yp + 2 * i, _mm256_fmadd_pd(sv, xv, _mm256_mul_pd(cv, q)));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    const double qr = pr * yr - pi * yi;
    const double qi = pr * yi + pi * yr;
    x[i] = {c * xr - s * qr, c * xi - s * qi};
    y[i] = {s * xr + c * qr, s * xi + c * qi};
  }
}

}  // namespace semient::simd::avx2
