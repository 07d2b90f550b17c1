#include "densitylab/productset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <string>

#include "densitylab/errors.hpp"
#include "densitylab/members.hpp"
#include "densitylab/parallel.hpp"

namespace densitylab {
namespace {

bool both_explicit(const SetSpec& a, const SetSpec& b) {
  return a.kind() == SetKind::explicit_list && b.kind() == SetKind::explicit_list;
}

void check_capacity(u64 hi) {
  if (hi > kProductHorizon) {
    throw CapacityError("products are supported up to " + std::to_string(kProductHorizon));
  }
}

/// Bit (p - lo) set for every product p in [lo, hi].
class ProductBits {
 public:
  ProductBits(const SetSpec& a, const SetSpec& b, u64 lo, u64 hi) : lo_(lo), hi_(hi), words_((hi - lo) / 64 + 1, 0) {
    const MemberSource sa(a, hi);
    const MemberSource sb(b, hi);
    const u64 root = iroot_floor(hi, 2);
    // Every pair has a <= root or b < root.
    for (auto ca = sa.cursor(1, root); !ca.done(); ca.advance()) {
      const u64 x = ca.value();
      for (auto cb = sb.cursor(std::max<u64>(1, ceil_div(lo, x)), hi / x); !cb.done(); cb.advance()) {
        set(x * cb.value());
      }
    }
    for (auto cb = sb.cursor(1, root); !cb.done(); cb.advance()) {
      const u64 y = cb.value();
      for (auto ca = sa.cursor(std::max(root + 1, ceil_div(lo, y)), hi / y); !ca.done(); ca.advance()) {
        set(ca.value() * y);
      }
    }
  }

  /// Smallest product in [from, hi], if any.
  std::optional<u64> next(u64 from) const {
    if (from > hi_) return std::nullopt;
    u64 offset = from - lo_;
    std::size_t w = offset >> 6;
    u64 word = words_[w] & (~u64{0} << (offset & 63));
    while (word == 0) {
      if (++w == words_.size()) return std::nullopt;
      word = words_[w];
    }
    const u64 p = lo_ + (u64{w} << 6) + static_cast<u64>(std::countr_zero(word));
    return p <= hi_ ? std::optional<u64>(p) : std::nullopt;
  }

  std::vector<u64> list() const {
    std::vector<u64> out;
    for (auto p = next(lo_); p; p = *p == hi_ ? std::nullopt : next(*p + 1)) out.push_back(*p);
    return out;
  }

 private:
  void set(u64 p) {
    const u64 offset = p - lo_;
    words_[offset >> 6] |= u64{1} << (offset & 63);
  }

  u64 lo_;
  u64 hi_;
  std::vector<u64> words_;
};

std::vector<u64> explicit_products(const SetSpec& a, const SetSpec& b, u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 x : a.elements()) {
    if (x > hi) break;
    for (u64 y : b.elements()) {
      const u128 p = u128{x} * y;
      if (p > hi) break;
      if (p >= lo) out.push_back(static_cast<u64>(p));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool better(const GapReport& r, const std::optional<GapReport>& best) {
  return !best || r.m < best->m || (r.m == best->m && r.x < best->x);
}

std::optional<GapReport> grid_scan(const SetSpec& a, const SetSpec& b, u64 n, u64 last_x, double ratio) {
  const auto grid = gap_grid(last_x, ratio);
  const ProductBits bits(a, b, 1, last_x * n);
  auto evaluate = [&](std::size_t i) -> std::optional<GapReport> {
    const u64 x = grid[i];
    const u64 hi = x * n;
    auto p = bits.next(x);
    if (!p || *p > hi) return std::nullopt;
    GapReport r{n, x, ceil_div(*p, x), 1, x, hi, *p};
    for (auto q = *p < hi ? bits.next(*p + 1) : std::nullopt; q && *q <= hi; q = *q < hi ? bits.next(*q + 1) : std::nullopt) {
      r.m = std::max(r.m, ceil_div(*q, r.last_product));
      r.last_product = *q;
      ++r.products_examined;
    }
    return r;
  };
  std::optional<GapReport> best;
  for (const auto& r : parallel_map(grid.size(), evaluate)) {
    if (r && better(*r, best)) best = r;
  }
  return best;
}

// Within a range of x where the window holds the same products c_i..c_j, only
// the leading ratio ceil(c_i / x) varies, so each range is solved in closed form.
std::optional<GapReport> exact_scan(const SetSpec& a, const SetSpec& b, u64 n, u64 last_x) {
  const auto p = explicit_products(a, b, 1, last_x * n);
  if (p.empty()) return std::nullopt;
  std::vector<u64> starts{1};
  for (u64 c : p) {
    if (c + 1 <= last_x) starts.push_back(c + 1);
    if (ceil_div(c, n) <= last_x) starts.push_back(ceil_div(c, n));
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  std::optional<GapReport> best;
  std::size_t i = 0;  // first product >= x
  std::size_t j = 0;  // one past the last product <= n x
  std::deque<std::size_t> ratio_max;  // indices k in [i, j-1) of ratios c_{k+1}/c_k, decreasing
  auto ratio = [&](std::size_t k) { return ceil_div(p[k + 1], p[k]); };
  for (std::size_t t = 0; t < starts.size(); ++t) {
    const u64 xl = starts[t];
    const u64 xr = t + 1 < starts.size() ? starts[t + 1] - 1 : last_x;
    while (j < p.size() && p[j] <= xl * n) {
      if (j > 0) {
        while (!ratio_max.empty() && ratio(ratio_max.back()) <= ratio(j - 1)) ratio_max.pop_back();
        ratio_max.push_back(j - 1);
      }
      ++j;
    }
    while (i < p.size() && p[i] < xl) ++i;
    while (!ratio_max.empty() && ratio_max.front() < i) ratio_max.pop_front();
    if (i >= j) continue;
    const u64 interior = ratio_max.empty() ? 1 : ratio(ratio_max.front());
    const u64 m = std::max(interior, ceil_div(p[i], xr));
    const u64 x = std::max(xl, ceil_div(p[i], m));
    const GapReport r{n, x, m, j - i, x, x * n, p[j - 1]};
    if (better(r, best)) best = r;
  }
  return best;
}

}  // namespace

std::vector<u64> products_in(const SetSpec& a, const SetSpec& b, u64 lo, u64 hi) {
  check_capacity(hi);
  if (lo > hi) throw ValidationError("products_in requires lo <= hi");
  lo = std::max<u64>(lo, 1);
  if (lo > hi) return {};
  if (both_explicit(a, b)) return explicit_products(a, b, lo, hi);
  return ProductBits(a, b, lo, hi).list();
}

u64 max_gap_ratio(std::span<const u64> sorted) {
  if (sorted.empty()) throw DomainError("max_gap_ratio of an empty list");
  u64 m = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] <= sorted[i - 1] || sorted[i - 1] == 0) {
      throw ValidationError("max_gap_ratio requires a strictly increasing positive list");
    }
    m = std::max(m, ceil_div(sorted[i], sorted[i - 1]));
  }
  return m;
}

std::vector<u64> gap_grid(u64 last, double ratio) {
  if (!(ratio > 1.0)) throw ValidationError("grid ratio must be > 1");
  std::vector<u64> out;
  for (int i = 0;; ++i) {
    const long double v = std::pow(static_cast<long double>(ratio), i);
    if (v > static_cast<long double>(last) + 0.5L) break;
    const u64 x = static_cast<u64>(std::llroundl(v));
    if (x > last) break;
    if (out.empty() || x > out.back()) out.push_back(x);
  }
  if (last >= 1 && (out.empty() || out.back() != last)) out.push_back(last);
  return out;
}

std::optional<GapReport> gap_witness(const SetSpec& a, const SetSpec& b, u64 n, u64 horizon, const GapOptions& options) {
  if (n < 2) throw ValidationError("gap_witness requires n >= 2");
  check_capacity(horizon);
  const u64 last_x = horizon / n;
  if (last_x < 1) return std::nullopt;
  const bool exact = options.scan == GapScan::exact || (options.scan == GapScan::automatic && both_explicit(a, b));
  if (exact) {
    if (!both_explicit(a, b)) throw ValidationError("exact gap scan requires explicit sets");
    return exact_scan(a, b, n, last_x);
  }
  return grid_scan(a, b, n, last_x, options.grid_ratio);
}

std::optional<u64> gap_violation(const GapReport& report, std::span<const u64> products) {
  std::size_t k = 0;
  for (u64 u = report.x; u <= report.last_product && u128{report.m} * u <= u128{report.n} * report.x; ++u) {
    while (k < products.size() && products[k] < u) ++k;
    if (k == products.size() || u128{products[k]} > u128{report.m} * u) return u;
  }
  return std::nullopt;
}

}  // namespace densitylab
