#include "densitylab/arith.hpp"

#include <array>

namespace densitylab {
namespace {

// r^m <= a, without overflow.
bool pow_le(u64 r, unsigned m, u64 a) {
  u64 acc = 1;
  for (unsigned i = 0; i < m; ++i) {
    auto next = checked_mul(acc, r);
    if (!next || *next > a) return false;
    acc = *next;
  }
  return true;
}

u64 mul_mod(u64 a, u64 b, u64 mod) { return static_cast<u64>(static_cast<u128>(a) * b % mod); }

u64 pow_mod(u64 base, u64 exp, u64 mod) {
  u64 result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

}  // namespace

u64 iroot_floor(u64 a, unsigned m) {
  if (m <= 1 || a <= 1) return a;
  u64 lo = 1;
  u64 hi = m == 2 ? (u64{1} << 32) : (u64{1} << (64 / m + 1));
  // invariant: lo^m <= a, hi^m > a
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    if (pow_le(mid, m, a)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

u64 iroot_ceil(u64 a, unsigned m) {
  const u64 r = iroot_floor(a, m);
  if (m <= 1) return r;
  auto p = checked_pow(r, m);
  return (p && *p == a) ? r : r + 1;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for every n < 2^64.
  static constexpr std::array<u64, 7> kBases{2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 base : kBases) {
    u64 x = pow_mod(base, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace densitylab
