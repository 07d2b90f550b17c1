#include "densitylab/summation.hpp"

#include <cmath>

namespace densitylab {
namespace {

constexpr u64 kDirectLimit = 4096;
constexpr u64 kTailAnchor = 256;

long double direct_sum(u64 a, u64 b, long double s) {
  CompensatedSum acc;
  if (s == 1.0L) {
    for (u64 x = a; x <= b; ++x) acc.add(1.0L / static_cast<long double>(x));
  } else if (s == 0.0L) {
    return static_cast<long double>(b - a + 1);
  } else {
    for (u64 x = a; x <= b; ++x) acc.add(std::pow(static_cast<long double>(x), -s));
  }
  return acc.value();
}

// Euler-Maclaurin for f(x) = x^-s on [a, b], a >= kTailAnchor.
long double euler_maclaurin(u64 a, u64 b, long double s) {
  const long double fa = static_cast<long double>(a);
  const long double fb = static_cast<long double>(b);
  long double integral = 0;
  if (s == 1.0L) {
    integral = std::log1p((fb - fa) / fa);
  } else {
    const long double e = 1.0L - s;
    // b^e - a^e = a^e * ((b/a)^e - 1), expm1 keeps the difference accurate.
    integral = std::pow(fa, e) * std::expm1(e * std::log1p((fb - fa) / fa)) / e;
  }
  auto f = [s](long double x) { return std::pow(x, -s); };
  // Odd derivatives f^(2k-1)(x) = -s(s+1)...(s+2k-2) x^(-s-2k+1).
  auto d1 = [s](long double x) { return -s * std::pow(x, -s - 1); };
  auto d3 = [s](long double x) { return -s * (s + 1) * (s + 2) * std::pow(x, -s - 3); };
  auto d5 = [s](long double x) {
    return -s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * std::pow(x, -s - 5);
  };
  return integral + (f(fa) + f(fb)) / 2 + (d1(fb) - d1(fa)) / 12 - (d3(fb) - d3(fa)) / 720 +
         (d5(fb) - d5(fa)) / 30240;
}

}  // namespace

u128 root_weight(u64 x, unsigned m) {
  if (m <= 1) return u128{1} << 64;
  long double w = 0;
  if (m == 2) {
    w = 1.0L / std::sqrt(static_cast<long double>(x));
  } else {
    const long double s = static_cast<long double>(m - 1) / static_cast<long double>(m);
    w = std::pow(static_cast<long double>(x), -s);
  }
  // w <= 1, so w * 2^62 fits a signed 64-bit integer.
  return static_cast<u128>(std::llroundl(std::ldexp(w, 62))) << 2;
}

long double power_sum_range(u64 a, u64 b, long double s) {
  if (a == 0) a = 1;
  if (a > b) return 0;
  if (s == 0.0L) return static_cast<long double>(b - a + 1);
  if (b - a < kDirectLimit) return direct_sum(a, b, s);
  CompensatedSum acc;
  u64 start = a;
  if (start < kTailAnchor) {
    acc.add(direct_sum(start, kTailAnchor - 1, s));
    start = kTailAnchor;
  }
  acc.add(euler_maclaurin(start, b, s));
  return acc.value();
}

}  // namespace densitylab
