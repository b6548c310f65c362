#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "semient/linalg.hpp"
#include "semient/simd/kernels.hpp"

namespace {

using namespace semient;
using semient::simd::Isa;

std::vector<cplx> gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

// Naive loops written independently of both kernel variants.
cplx naive_dotc(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double scale(const std::vector<cplx>& x) {
  double s = 0.0;
  for (auto v : x) s += std::abs(v);
  return s + 1.0;
}

class KernelEquivalence : public ::testing::TestWithParam<Isa> {
 protected:
  void SetUp() override {
    if (!simd::isa_available(GetParam())) GTEST_SKIP() << "ISA not available on this CPU";
  }
};

TEST_P(KernelEquivalence, DotcMatchesNaive) {
  const auto& k = simd::kernels(GetParam());
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n <= 37; ++n) {
    const auto x = gaussian(n, rng), y = gaussian(n, rng);
    const cplx ref = naive_dotc(x, y);
    EXPECT_LE(std::abs(k.dotc(x, y) - ref), 1e-14 * scale(x) * scale(y)) << "n=" << n;
    EXPECT_EQ(simd::scalar::dotc(x, y), simd::scalar::dotc(x, y));
  }
}

TEST_P(KernelEquivalence, NormSqMatchesScalar) {
  const auto& k = simd::kernels(GetParam());
  std::mt19937_64 rng(12);
  for (std::size_t n = 0; n <= 37; ++n) {
    const auto x = gaussian(n, rng);
    const double ref = simd::scalar::norm_sq(x);
    EXPECT_NEAR(k.norm_sq(x), ref, 1e-14 * (ref + 1.0)) << "n=" << n;
    EXPECT_NEAR(ref, naive_dotc(x, x).real(), 1e-13 * (ref + 1.0));
  }
}

TEST_P(KernelEquivalence, AxpyConjMatchesScalar) {
  const auto& k = simd::kernels(GetParam());
  std::mt19937_64 rng(13);
  for (std::size_t n = 0; n <= 37; ++n) {
    const auto x = gaussian(n, rng);
    auto y1 = gaussian(n, rng);
    auto y2 = y1;
    const cplx alpha{0.7, -1.3};
    k.axpy_conj(alpha, x, y1);
    for (std::size_t i = 0; i < n; ++i) y2[i] += alpha * std::conj(x[i]);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(std::abs(y1[i] - y2[i]), 1e-14 * (std::abs(y2[i]) + 2.0));
  }
}

TEST_P(KernelEquivalence, RotateMatchesScalar) {
  const auto& k = simd::kernels(GetParam());
  std::mt19937_64 rng(14);
  const double c = std::cos(0.4), s = std::sin(0.4);
  const cplx p = std::polar(1.0, 1.1);
  for (std::size_t n = 0; n <= 37; ++n) {
    auto x1 = gaussian(n, rng), y1 = gaussian(n, rng);
    auto x2 = x1, y2 = y1;
    k.rotate(x1, y1, c, s, p);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx a = x2[i], b = y2[i];
      x2[i] = c * a - s * p * b;
      y2[i] = s * a + c * p * b;
    }
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(std::abs(x1[i] - x2[i]), 1e-14 * (std::abs(x2[i]) + 2.0));
      EXPECT_LE(std::abs(y1[i] - y2[i]), 1e-14 * (std::abs(y2[i]) + 2.0));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllIsas, KernelEquivalence, ::testing::Values(Isa::Scalar, Isa::Avx2),
                         [](const auto& info) { return std::string(simd::isa_name(info.param)); });

TEST(KernelDispatch, AutoResolvesToBest) {
  EXPECT_EQ(simd::kernels(Isa::Auto).isa, simd::best_isa());
  EXPECT_TRUE(simd::isa_available(Isa::Scalar));
  EXPECT_EQ(simd::kernels(Isa::Scalar).isa, Isa::Scalar);
}

TEST(KernelDispatch, UnavailableIsaThrows) {
  if (simd::isa_available(Isa::Avx2)) GTEST_SKIP() << "AVX2 present";
  EXPECT_THROW(simd::kernels(Isa::Avx2), std::invalid_argument);
}

TEST(KernelDispatch, ParseNames) {
  EXPECT_EQ(simd::parse_isa("scalar"), Isa::Scalar);
  EXPECT_EQ(simd::parse_isa("avx2"), Isa::Avx2);
  EXPECT_EQ(simd::parse_isa("auto"), Isa::Auto);
  EXPECT_FALSE(simd::parse_isa("neon").has_value());
  for (Isa i : {Isa::Auto, Isa::Scalar, Isa::Avx2}) EXPECT_EQ(simd::parse_isa(simd::isa_name(i)), i);
}

// The solvers built on the kernels agree across ISAs.
TEST(KernelDispatch, SolversAgreeAcrossIsas) {
  if (!simd::isa_available(Isa::Avx2)) GTEST_SKIP() << "AVX2 not available";
  std::mt19937_64 rng(15);
  for (std::size_t d : {2u, 5u, 9u, 16u}) {
    const CMatrix c = random_gaussian(d, d, rng);
    const auto a = svd(c, Isa::Scalar), b = svd(c, Isa::Avx2);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(a.singular_values[i], b.singular_values[i], 1e-12);
    const CMatrix h = c * c.adjoint();
    const auto e1 = hermitian_eigen(h, Isa::Scalar), e2 = hermitian_eigen(h, Isa::Avx2);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(e1.eigenvalues[i], e2.eigenvalues[i], 1e-11);
  }
}

}  // namespace
