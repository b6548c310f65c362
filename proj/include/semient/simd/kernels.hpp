#pragma once

// Complex double inner-loop kernels shared by the Jacobi solvers and the
// quadrature accumulators. Each kernel has a scalar reference version; vector
// variants are selected at runtime and must agree with it to rounding.

#include <complex>
#include <optional>
#include <span>
#include <string_view>

namespace semient::simd {

using cplx = std::complex<double>;

enum class Isa { Auto, Scalar, Avx2 };

struct Kernels {
  Isa isa;
  /// sum_i conj(x_i) * y_i
  cplx (*dotc)(std::span<const cplx> x, std::span<const cplx> y);
  /// sum_i |x_i|^2
  double (*norm_sq)(std::span<const cplx> x);
  /// y += alpha * conj(x)
  void (*axpy_conj)(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
  /// (x, y) <- (c x - s p y, s x + c p y); p is a unit phase.
  void (*rotate)(std::span<cplx> x, std::span<cplx> y, double c, double s, cplx p);
};

/// Kernel table for `isa`. Auto resolves to the best ISA the running CPU
/// supports; requesting an unavailable ISA throws std::invalid_argument.
const Kernels& kernels(Isa isa = Isa::Auto);

bool isa_available(Isa isa);
Isa best_isa();
std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

namespace scalar {
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);
double norm_sq(std::span<const cplx> x);
void axpy_conj(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void rotate(std::span<cplx> x, std::span<cplx> y, double c, double s, cplx p);
}  // namespace scalar

#if defined(SEMIENT_HAVE_AVX2)
namespace avx2 {
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);
double norm_sq(std::span<const cplx> x);
void axpy_conj(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void rotate(std::span<cplx> x, std::span<cplx> y, double c, double s, cplx p);
}  // namespace avx2
#endif

}  // namespace semient::simd
