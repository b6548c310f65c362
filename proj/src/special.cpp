#include "semient/special.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace semient {

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument(fmt::format("log_factorial: negative argument {}", n));
  return std::lgamma(static_cast<double>(n) + 1.0);
}

std::optional<uint128> binomial_exact(int n, int j) {
  if (n < 0 || j < 0 || j > n) return 0;
  j = std::min(j, n - j);
  using u128 = uint128;
  constexpr u128 kMax = ~u128{0};
  u128 acc = 1;
  // acc * (n - j + i) / i stays an integer at every step; divide out the gcd
  // first so the intermediate product overflows as late as possible.
  for (int i = 1; i <= j; ++i) {
    u128 num = static_cast<u128>(n - j + i);
    u128 den = static_cast<u128>(i);
    const std::uint64_t g1 = std::gcd(static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den));
    num /= g1;
    den /= g1;
    const u128 a = acc / den;  // den divides acc once num is coprime to it
    if (num != 0 && a > kMax / num) return std::nullopt;
    acc = a * num;
  }
  return acc;
}

double log_binomial(int n, int j) {
  if (n < 0 || j < 0 || j > n) {
    throw std::invalid_argument(fmt::format("log_binomial: invalid arguments n={}, j={}", n, j));
  }
  if (auto exact = binomial_exact(n, j); exact && *exact < (static_cast<uint128>(1) << 64)) {
    return std::log(static_cast<double>(static_cast<std::uint64_t>(*exact)));
  }
  return log_factorial(n) - log_factorial(j) - log_factorial(n - j);
}

double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace semient
