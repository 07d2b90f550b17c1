#pragma once

#include <cstdint>
#include <optional>

namespace densitylab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kU64Max = ~u64{0};

/// Product or nullopt on overflow.
constexpr std::optional<u64> checked_mul(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

constexpr std::optional<u64> checked_add(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_add_overflow(a, b, &out)) return std::nullopt;
  return out;
}

constexpr u64 ceil_div(u64 a, u64 b) { return a / b + (a % b != 0 ? 1 : 0); }

/// base^exp, or nullopt when the result leaves u64.
constexpr std::optional<u64> checked_pow(u64 base, unsigned exp) {
  u64 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    auto next = checked_mul(result, base);
    if (!next) return std::nullopt;
    result = *next;
  }
  return result;
}

/// Largest r with r^m <= a. Exact integer binary search.
u64 iroot_floor(u64 a, unsigned m);

/// Smallest r with r^m >= a. Exact integer binary search.
u64 iroot_ceil(u64 a, unsigned m);

/// Deterministic Miller-Rabin over the full u64 range.
bool is_prime_u64(u64 n);

}  // namespace densitylab
