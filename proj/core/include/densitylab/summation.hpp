#pragma once

#include <compare>
#include <cmath>

#include "densitylab/arith.hpp"

namespace densitylab {

/// Exact accumulator of unsigned 64.64 fixed-point weights.
///
/// Each weight is rounded once when it is formed; after that every addition
/// and subtraction is exact integer arithmetic. Window sums built from the
/// same weights are therefore comparable bit for bit, and sliding a window
/// (add the entering term, subtract the leaving one) never drifts.
class FixedSum {
 public:
  static constexpr int kFractionBits = 64;

  constexpr FixedSum() = default;
  constexpr explicit FixedSum(u128 raw) : raw_(raw) {}

  constexpr void add(u128 w) { raw_ += w; }
  constexpr void sub(u128 w) { raw_ -= w; }
  constexpr FixedSum& operator+=(FixedSum o) {
    raw_ += o.raw_;
    return *this;
  }

  constexpr u128 raw() const { return raw_; }
  long double value() const { return std::ldexp(static_cast<long double>(raw_), -kFractionBits); }

  constexpr auto operator<=>(const FixedSum&) const = default;

 private:
  u128 raw_ = 0;
};

/// floor(2^64 / x) for x >= 1; the rounding error is below 2^-64 per term.
constexpr u128 reciprocal_weight(u64 x) { return (u128{1} << 64) / x; }

/// 2^64 * x^(-(m-1)/m), rounded to nearest, for m >= 1.
u128 root_weight(u64 x, unsigned m);

/// Neumaier-compensated running sum in extended precision.
class CompensatedSum {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + carry_; }

 private:
  long double sum_ = 0;
  long double carry_ = 0;
};

/// Sum of x^(-s) for x in [a, b], 1 <= a. Returns 0 when a > b.
///
/// Short ranges are summed term by term; long ranges switch to an
/// Euler-Maclaurin tail anchored at x >= 256, where the truncation error is
/// below 1e-20 relative for the exponents used here (0 <= s <= 1).
long double power_sum_range(u64 a, u64 b, long double s);

/// H_b - H_{a-1}.
inline long double harmonic_range(u64 a, u64 b) { return power_sum_range(a, b, 1.0L); }

}  // namespace densitylab
