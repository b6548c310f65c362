#pragma once

// Binomial/factorial helpers and compensated summation.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>

namespace semient {

__extension__ typedef unsigned __int128 uint128;

/// ln n!, via log-gamma.
double log_factorial(int n);

/// ln C(n, j). Exact integer binomials are used while they fit in 64 bits,
/// log-gamma beyond that.
double log_binomial(int n, int j);

/// C(n, j) in exact unsigned 128-bit arithmetic, or nullopt on overflow.
std::optional<uint128> binomial_exact(int n, int j);

/// Neumaier (improved Kahan) summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

}  // namespace semient
