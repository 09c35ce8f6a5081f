#pragma once

#include <cmath>
#include <cstdint>

namespace longtail {

// Neumaier-compensated accumulator. Used wherever many small terms are summed
// so that results do not depend on accumulation granularity or task order.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + carry; }
};

// log C(n, r) via log-gamma; exact enough for n up to 1e15.
inline double log_choose(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return -INFINITY;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(r) + 1.0) -
         std::lgamma(static_cast<double>(n - r) + 1.0);
}

// log P[Binomial(n, q) = r], stable for large n and extreme q.
inline double log_binom_pmf(std::int64_t n, std::int64_t r, double q) {
  if (q <= 0.0) return r == 0 ? 0.0 : -INFINITY;
  if (q >= 1.0) return r == n ? 0.0 : -INFINITY;
  return log_choose(n, r) + static_cast<double>(r) * std::log(q) +
         static_cast<double>(n - r) * std::log1p(-q);
}

inline double clamp01(double v) {
  if (v < 0.0) return 0.0;
  if (v > 1.0) return 1.0;
  return v;
}

}  // namespace longtail
