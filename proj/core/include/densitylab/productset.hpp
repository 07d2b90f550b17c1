#pragma once

#include <optional>
#include <span>
#include <vector>

#include "densitylab/intset.hpp"

namespace densitylab {

/// Largest hi accepted by products_in and gap_witness.
inline constexpr u64 kProductHorizon = 1'000'000'000;

/// Sorted distinct {a b : a in A, b in B, lo <= a b <= hi}.
/// Throws CapacityError when hi > kProductHorizon.
std::vector<u64> products_in(const SetSpec& a, const SetSpec& b, u64 lo, u64 hi);

/// max over consecutive pairs of ceil(c[i+1] / c[i]); 1 for a singleton.
/// Throws DomainError on an empty list.
u64 max_gap_ratio(std::span<const u64> sorted);

struct GapReport {
  u64 n = 0;
  u64 x = 0;
  u64 m = 0;
  u64 products_examined = 0;
  u64 lo = 0;
  u64 hi = 0;
  /// Largest product in [lo, hi]; the gap bound is certified for u up to here.
  u64 last_product = 0;
};

enum class GapScan { automatic, grid, exact };

struct GapOptions {
  double grid_ratio = 1.1;
  /// automatic: exact when both sets are explicit lists, grid otherwise.
  GapScan scan = GapScan::automatic;
};

/// Minimizes m over candidate x in [1, horizon / n], ties to the smaller x.
/// m is max_gap_ratio of the products in [x, n x] with x prepended when the
/// first product exceeds x. nullopt when every window is empty.
std::optional<GapReport> gap_witness(const SetSpec& a, const SetSpec& b, u64 n, u64 horizon,
                                     const GapOptions& options = {});

/// The grid used by gap_witness: round(ratio^i) within [1, last], plus last.
std::vector<u64> gap_grid(u64 last, double ratio);

/// First u in [x, last_product] with m u <= n x whose interval [u, m u]
/// misses `products` (the products in [lo, hi]); nullopt when sound.
std::optional<u64> gap_violation(const GapReport& report, std::span<const u64> products);

}  // namespace densitylab
