#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "semient/sphere.hpp"
#include "support/oracles.hpp"

namespace {

using namespace semient;

TEST(SphereModel, RejectsLevelZero) {
  EXPECT_THROW(SphereModel(0), std::invalid_argument);
  EXPECT_EQ(SphereModel(4).dim(), 5u);
}

TEST(SphereBasis, Examples) {
  for (int k = 1; k <= 12; ++k) {
    const SphereModel m(k);
    for (cplx z : {cplx(0.0), cplx(0.3, -2.0), cplx(-7.0, 1.0)})
      EXPECT_NEAR(std::abs(m.basis_eval(0, z) - std::sqrt(k + 1.0)), 0.0, 1e-14);
  }
  EXPECT_NEAR(std::abs(SphereModel(2).basis_eval(1, 1.0) - std::sqrt(6.0)), 0.0, 1e-15);
  EXPECT_THROW(SphereModel(3).basis_eval(4, 1.0), std::out_of_range);
  EXPECT_THROW(SphereModel(3).basis_eval(-1, 1.0), std::out_of_range);
}

TEST(SphereBasis, MatchesDirectFormula) {
  const auto rows = oracle::pascal(30);
  const SphereModel m(30);
  const cplx z(0.8, 0.45);
  for (int j = 0; j <= 30; ++j) {
    const cplx ref = std::sqrt(31.0 * static_cast<double>(rows[30][j])) * std::pow(z, j);
    EXPECT_LE(std::abs(m.basis_eval(j, z) - ref), 1e-13 * std::abs(ref)) << j;
  }
}

TEST(SphereBasis, ConjugationSymmetry) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const SphereModel m(9);
  for (int t = 0; t < 20; ++t) {
    const cplx z(u(rng), u(rng));
    for (int j = 0; j <= 9; ++j)
      EXPECT_LE(std::abs(std::conj(m.basis_eval(j, std::conj(z))) - m.basis_eval(j, z)),
                1e-15 * (1.0 + std::abs(m.basis_eval(j, z))));
  }
}

TEST(SphereBasis, LargeLevelStaysFinite) {
  const SphereModel m(200);
  const auto n = m.normalized_values({5.0, 5.0});
  for (const cplx& v : n) EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
}

TEST(Pairing, Examples) {
  const SphereModel m(4);
  const CMatrix h0 = m.pairing_matrix(0.0);
  EXPECT_NEAR(h0(0, 0).real(), 5.0, 1e-14);
  double rest = 0.0;
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t l = 0; l < 5; ++l)
      if (j + l > 0) rest = std::max(rest, std::abs(h0(j, l)));
  EXPECT_EQ(rest, 0.0);

  const CMatrix h1 = SphereModel(1).pairing_matrix(1.0);
  EXPECT_LE(max_abs_difference(h1, CMatrix{{1.0, 1.0}, {1.0, 1.0}}), 1e-15);
}

TEST(Pairing, TraceIsDimensionAndRankOne) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k : {1, 5, 17, 60}) {
    const SphereModel m(k);
    for (int t = 0; t < 10; ++t) {
      const cplx z(u(rng), u(rng));
      const CMatrix h = m.pairing_matrix(z);
      EXPECT_NEAR(h.trace().real(), k + 1.0, 1e-12 * (k + 1));
      EXPECT_LE(hermiticity_defect(h), 1e-15 * (k + 1));
      const auto e = hermitian_eigen(h);
      EXPECT_NEAR(e.eigenvalues[0], k + 1.0, 1e-10 * (k + 1));
      for (std::size_t i = 1; i < e.eigenvalues.size(); ++i) EXPECT_LE(std::fabs(e.eigenvalues[i]), 1e-10 * (k + 1));
    }
  }
}

TEST(SphereQuadrature, DefaultsAndPolicy) {
  const SphereModel m(10);
  const SphereQuadrature q(m);
  EXPECT_EQ(q.radial_count(), 6);
  EXPECT_EQ(q.angular_count(), 22);
  EXPECT_THROW(SphereQuadrature(m, 5, 0), std::invalid_argument);
  EXPECT_THROW(SphereQuadrature(m, 0, 21), std::invalid_argument);
  try {
    SphereQuadrature(m, 0, 3);
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("2k+2"), std::string::npos);
  }
}

TEST(SphereQuadrature, WeightsPositiveAndVolumeOne) {
  for (int k : {1, 2, 9, 60}) {
    const SphereQuadrature q{SphereModel(k)};
    double s = 0.0;
    for (const auto& n : q.nodes()) {
      EXPECT_GT(n.weight, 0.0);
      s += n.weight;
    }
    EXPECT_NEAR(s, 1.0, 1e-13);
  }
}

TEST(SphereGram, IdentityUpToSixty) {
  for (int k = 1; k <= 60; ++k) {
    const SphereModel m(k);
    const double tol = k == 1 ? 1e-13 : 1e-12;
    EXPECT_LE(max_abs_difference(gram_matrix(m, SphereQuadrature(m)), CMatrix::identity(m.dim())), tol) << "k=" << k;
  }
}

TEST(SphereGram, StableUnderRefinement) {
  for (int k : {3, 11, 25, 40, 60}) {
    const SphereModel m(k);
    const CMatrix a = gram_matrix(m, SphereQuadrature(m));
    const SphereQuadrature fine(m, 2 * SphereQuadrature::min_radial(k), 2 * SphereQuadrature::min_angular(k));
    EXPECT_LE(max_abs_difference(a, gram_matrix(m, fine)), 1e-14);
  }
}

TEST(SphereModel, ChartValuesMatchPointValues) {
  const SphereModel m(17);
  std::vector<cplx> n;
  for (double r : {0.05, 0.7, 1.0, 2.5, 9.0}) {
    const double theta = 0.3 + r;
    m.chart_values(r * r / (1.0 + r * r), theta, n);
    const auto z = m.normalized_values(std::polar(r, theta));
    for (std::size_t j = 0; j < n.size(); ++j) EXPECT_LE(std::abs(n[j] - z[j]), 1e-13) << "r=" << r << " j=" << j;
  }
}

TEST(SphereGram, MonomialNormsMatchBetaIntegral) {
  for (int k = 1; k <= 60; ++k) {
    const SphereModel m(k);
    const CMatrix g = monomial_gram(m, SphereQuadrature(m));
    for (int j = 0; j <= k; ++j) {
      const double ref = static_cast<double>(oracle::monomial_norm_sq(k, j));
      EXPECT_LE(std::fabs(g(j, j).real() - ref), 1e-12 * ref) << "k=" << k << " j=" << j;
    }
  }
}

TEST(SphereGram, MismatchedQuadratureRejected) {
  EXPECT_THROW(gram_matrix(SphereModel(3), SphereQuadrature(SphereModel(4))), std::invalid_argument);
}

TEST(SphereModel, DimensionOverLevelTendsToOne) {
  for (int k : {10, 100, 1000}) EXPECT_NEAR(SphereModel(k).dim() / static_cast<double>(k), 1.0, 1.01 / k);
}

}  // namespace
