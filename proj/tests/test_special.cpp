#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "semient/special.hpp"
#include "support/oracles.hpp"

namespace {

using namespace semient;

TEST(Binomial, ExactMatchesPascal) {
  const auto rows = oracle::pascal(120);
  for (int n = 0; n <= 120; ++n)
    for (int j = 0; j <= n; ++j) {
      const auto b = binomial_exact(n, j);
      ASSERT_TRUE(b.has_value()) << n << "," << j;
      EXPECT_TRUE(*b == rows[n][j]) << n << "," << j;
    }
}

TEST(Binomial, OutOfRangeIsZero) {
  EXPECT_TRUE(*binomial_exact(5, 7) == 0);
  EXPECT_TRUE(*binomial_exact(5, -1) == 0);
}

TEST(Binomial, LogMatchesPascal) {
  const auto rows = oracle::pascal(120);
  for (int n = 0; n <= 120; ++n)
    for (int j = 0; j <= n; ++j) {
      const double ref = std::log(static_cast<long double>(rows[n][j]));
      EXPECT_NEAR(log_binomial(n, j), ref, 1e-13 * std::max(1.0, ref)) << n << "," << j;
    }
}

TEST(Binomial, LogStaysFiniteForLargeArguments) {
  // ln C(400, 200) ~ 274.7; C(2k, k) ~ 4^k / sqrt(pi k)
  const double v = log_binomial(400, 200);
  EXPECT_NEAR(v, 400 * std::log(2.0) - 0.5 * std::log(std::numbers::pi * 200), 1e-3);
}

TEST(Factorial, LogFactorial) {
  EXPECT_DOUBLE_EQ(log_factorial(0), 0.0);
  EXPECT_DOUBLE_EQ(log_factorial(1), 0.0);
  EXPECT_NEAR(log_factorial(10), std::log(3628800.0), 1e-13);
}

TEST(Compensated, RecoversCancellation) {
  std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(compensated_sum(xs), 2.0);
  CompensatedSum s;
  for (int i = 0; i < 1000000; ++i) s.add(0.1);
  EXPECT_NEAR(s.value(), 100000.0, 1e-9);
}

TEST(Binomial, SquareSumIdentityExact) {
  const auto rows = oracle::pascal(60);
  for (int k = 0; k <= 30; ++k) {
    uint128 s = 0;
    for (int j = 0; j <= k; ++j) s += rows[k][j] * rows[k][j];
    EXPECT_TRUE(s == rows[2 * k][k]) << "k=" << k;
  }
}

}  // namespace
