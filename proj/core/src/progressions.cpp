#include "densitylab/progressions.hpp"

#include <algorithm>
#include <string>

#include "densitylab/errors.hpp"
#include "densitylab/parallel.hpp"

namespace densitylab {
namespace {

struct Match {
  bool found = false;
  u64 member = 0;
  /// When !found: smallest member >= x n, the first candidate that could
  /// serve a larger term.
  std::optional<u64> next_above;
};

Match nearest_member(const MembershipIndex& index, u64 x, u64 n) {
  Match out;
  const u128 upper = u128{x} * n;  // members must be < x n
  const auto p = index.prev(x);
  const auto q = index.next(x);
  const bool p_ok = p && u128{*p} * n > x;
  const bool q_ok = q && u128{*q} < upper;
  if (p_ok && q_ok) {
    // p <= x <= q: p is nearer in log distance iff x^2 <= p q.
    out.found = true;
    out.member = u128{x} * x <= u128{*p} * *q ? *p : *q;
  } else if (p_ok || q_ok) {
    out.found = true;
    out.member = p_ok ? *p : *q;
  } else if (upper <= index.horizon()) {
    out.next_above = index.next(static_cast<u64>(upper));
  }
  return out;
}

void validate_search(u64 l, u64 n) {
  if (l < 1) throw ValidationError("progression length l must be >= 1");
  if (n < 1) throw ValidationError("approximation quality n must be >= 1");
}

struct Hit {
  u64 a = 0;
  u64 step = 0;
  bool operator<(const Hit& o) const { return a != o.a ? a < o.a : step < o.step; }
};

// Batches of outer-loop values searched concurrently; each batch sees the
// best hit of the batches before it.
template <typename SearchOne>
std::optional<Hit> batched_search(u64 first, u64 last, SearchOne search_one) {
  std::optional<Hit> best;
  const u64 batch = 64 * u64{thread_count()};
  for (u64 start = first; start <= last;) {
    const u64 count = std::min<u64>(batch, last - start + 1);
    const auto limit = best ? best->a : kU64Max;
    auto hits = parallel_map(count, [&](std::size_t i) { return search_one(start + i, limit); });
    for (const auto& h : hits) {
      if (h && (!best || *h < *best)) best = h;
    }
    if (last - start < count) break;
    start += count;
  }
  return best;
}

}  // namespace

bool is_n_approx(u64 x, u64 a, u64 n) { return u128{a} * n > x && u128{x} * n > a; }

std::optional<std::vector<std::pair<u64, u64>>> approx_subset(std::span<const u64> xs, const MembershipIndex& index,
                                                               u64 n) {
  std::vector<std::pair<u64, u64>> matches;
  matches.reserve(xs.size());
  for (u64 x : xs) {
    if (x == 0) throw ValidationError("approx_subset requires positive terms");
    if (u128{x} * n > index.horizon()) {
      throw DomainError("term " + std::to_string(x) + " times n exceeds the horizon");
    }
    const auto m = nearest_member(index, x, n);
    if (!m.found) return std::nullopt;
    matches.emplace_back(x, m.member);
  }
  return matches;
}

std::optional<ApproxWitness> approx_subset(std::span<const u64> xs, const SetSpec& a, u64 n, u64 horizon) {
  MembershipIndex index(a, horizon);
  auto matches = approx_subset(xs, index, n);
  if (!matches) return std::nullopt;
  ApproxWitness w;
  w.a = xs.empty() ? 0 : xs.front();
  w.l = xs.size();
  w.n = n;
  w.matches = std::move(*matches);
  return w;
}

std::optional<std::vector<u64>> geometric_terms(u64 a, u64 r, u64 l) {
  std::vector<u64> out;
  u64 x = a;
  for (u64 i = 0; i < l; ++i) {
    if (i > 0) {
      auto next = checked_mul(x, r);
      if (!next) return std::nullopt;
      x = *next;
    }
    out.push_back(x);
  }
  return out;
}

std::optional<std::vector<u64>> power_ap_terms(u64 a, u64 d, u64 l, unsigned m) {
  std::vector<u64> out;
  const u64 s = iroot_ceil(a, m);
  for (u64 i = 0; i < l; ++i) {
    auto step = checked_mul(i, d);
    auto base = step ? checked_add(s, *step) : std::nullopt;
    auto term = base ? checked_pow(*base, m) : std::nullopt;
    if (!term) return std::nullopt;
    out.push_back(*term);
  }
  return out;
}

std::optional<ApproxWitness> find_geo(const SetSpec& a, u64 l, u64 n, u64 min_a, u64 min_r, u64 horizon) {
  validate_search(l, n);
  const u64 a0 = min_a + 1;
  const u64 r0 = min_r + 1;
  const auto first = checked_pow(r0, static_cast<unsigned>(std::min<u64>(l - 1, 64)));
  const auto first_top = first ? checked_mul(a0, *first) : std::nullopt;
  if (!first_top || u128{*first_top} * n > horizon) {
    throw DomainError("no candidate progression fits the horizon: (min_a+1)(min_r+1)^(l-1) n > horizon");
  }
  const MembershipIndex index(a, horizon);
  const u64 r_last = l == 1 ? r0 : iroot_floor(horizon / n / a0, static_cast<unsigned>(l - 1));

  auto search_r = [&](u64 r, u64 a_limit) -> std::optional<Hit> {
    u64 scale = 1;  // r^(l-1)
    for (u64 i = 1; i < l; ++i) scale *= r;
    const u64 a_last = horizon / n / scale;
    for (u64 x0 = a0; x0 <= a_last && x0 < a_limit;) {
      u64 jump = 0;
      bool ok = true;
      for (u64 i = 0, power = 1; i < l; ++i, power *= r) {
        const auto m = nearest_member(index, x0 * power, n);
        if (m.found) continue;
        ok = false;
        if (!m.next_above) return std::nullopt;
        // Term i cannot succeed again until a r^i n exceeds that member.
        jump = *m.next_above / (power * n) + 1;
        break;
      }
      if (ok) return Hit{x0, r};
      x0 = std::max(jump, x0 + 1);
    }
    return std::nullopt;
  };

  const auto best = batched_search(r0, r_last, search_r);
  if (!best) return std::nullopt;
  ApproxWitness w;
  w.kind = ProgressionKind::geometric;
  w.a = best->a;
  w.step = best->step;
  w.l = l;
  w.n = n;
  w.matches = *approx_subset(*geometric_terms(best->a, best->step, l), index, n);
  return w;
}

std::optional<ApproxWitness> find_power_ap(const SetSpec& a, unsigned m, u64 l, u64 n, u64 min_a, u64 min_d,
                                           u64 horizon) {
  validate_search(l, n);
  if (m < 1) throw ValidationError("power exponent m must be >= 1");
  const u64 s0 = iroot_ceil(min_a + 1, m);
  const u64 d0 = min_d + 1;
  auto top_term = [&](u64 s, u64 d) -> std::optional<u64> {
    auto step = checked_mul(l - 1, d);
    auto base = step ? checked_add(s, *step) : std::nullopt;
    auto term = base ? checked_pow(*base, m) : std::nullopt;
    if (!term || u128{*term} * n > horizon) return std::nullopt;
    return term;
  };
  if (!top_term(s0, d0)) {
    throw DomainError("no candidate progression fits the horizon: (ceil((min_a+1)^(1/m)) + (l-1)(min_d+1))^m n > horizon");
  }
  const MembershipIndex index(a, horizon);
  // Least a whose rounded root is s.
  auto a_of = [&](u64 s) { return std::max(min_a + 1, *checked_pow(s - 1, m) + 1); };

  u64 d_last = d0;
  if (l > 1) {
    const u64 root_top = iroot_floor(horizon / n, m);
    d_last = root_top < s0 ? d0 : std::max(d0, (root_top - s0) / (l - 1));
  }

  auto search_d = [&](u64 d, u64 a_limit) -> std::optional<Hit> {
    for (u64 s = s0; top_term(s, d) && a_of(s) < a_limit;) {
      u64 jump = 0;
      bool ok = true;
      for (u64 i = 0; i < l; ++i) {
        const u64 term = *checked_pow(s + i * d, m);
        const auto match = nearest_member(index, term, n);
        if (match.found) continue;
        ok = false;
        if (i == 0) {
          if (!match.next_above) return std::nullopt;
          // Smallest s with s^m n > next member.
          jump = iroot_floor(*match.next_above / n, m) + 1;
        }
        break;
      }
      if (ok) return Hit{a_of(s), d};
      s = std::max(jump, s + 1);
    }
    return std::nullopt;
  };

  const auto best = batched_search(d0, d_last, search_d);
  if (!best) return std::nullopt;
  ApproxWitness w;
  w.kind = ProgressionKind::power_ap;
  w.a = best->a;
  w.step = best->step;
  w.l = l;
  w.n = n;
  w.m = m;
  w.matches = *approx_subset(*power_ap_terms(best->a, best->step, l, m), index, n);
  return w;
}

GpCertificate gp_free_certify(const SetSpec& a, u64 horizon) {
  if (horizon > kGpCertifyHorizon) {
    throw CapacityError("gp_free_certify supports horizons up to " + std::to_string(kGpCertifyHorizon));
  }
  GpCertificate out;
  if (horizon < 2) return out;
  std::vector<u64> spf(horizon + 1, 0);
  for (u64 p = 2; p <= horizon; ++p) {
    if (spf[p] != 0) continue;
    for (u64 q = p; q <= horizon; q += p) {
      if (spf[q] == 0) spf[q] = p;
    }
  }
  const MembershipIndex index(a, horizon);
  std::vector<u64> divisors;
  for (MemberCursor cur(a, 2, horizon); !cur.done(); cur.advance()) {
    const u64 b = cur.value();
    // Divisors of b^2 below b.
    divisors.assign(1, 1);
    for (u64 rest = b; rest > 1;) {
      const u64 p = spf[rest];
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      const std::size_t base = divisors.size();
      u64 pk = 1;
      for (unsigned k = 1; k <= 2 * e; ++k) {
        pk *= p;
        for (std::size_t i = 0; i < base; ++i) {
          if (u128{divisors[i]} * pk < b) divisors.push_back(divisors[i] * pk);
        }
      }
    }
    std::sort(divisors.begin(), divisors.end());
    const u64 square = b * b;
    for (u64 d : divisors) {
      ++out.pairs_checked;
      if (!index.contains(d)) continue;
      const u64 c = square / d;
      if (contains(a, c)) {
        out.gp_free = false;
        out.witness = std::array<u64, 3>{d, b, c};
        return out;
      }
    }
  }
  return out;
}

}  // namespace densitylab
