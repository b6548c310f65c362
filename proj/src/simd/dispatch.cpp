#include "semient/simd/kernels.hpp"

#include <stdexcept>
#include <string>

namespace semient::simd {
namespace {

constexpr Kernels kScalar{Isa::Scalar, scalar::dotc, scalar::norm_sq, scalar::axpy_conj,
                          scalar::rotate};

#if defined(SEMIENT_HAVE_AVX2)
constexpr Kernels kAvx2{Isa::Avx2, avx2::dotc, avx2::norm_sq, avx2::axpy_conj, avx2::rotate};

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}
#endif

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Auto:
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(SEMIENT_HAVE_AVX2)
      return cpu_has_avx2();
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

const Kernels& kernels(Isa isa) {
  if (isa == Isa::Auto) isa = best_isa();
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA '" + std::string(isa_name(isa)) +
                                "' is not available on this build/CPU");
  }
#if defined(SEMIENT_HAVE_AVX2)
  if (isa == Isa::Avx2) return kAvx2;
#endif
  return kScalar;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Auto: return "auto";
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "auto") return Isa::Auto;
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  return std::nullopt;
}

}  // namespace semient::simd
