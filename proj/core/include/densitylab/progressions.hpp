#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "densitylab/intset.hpp"

namespace densitylab {

/// x/n < a < x n, in exact integer arithmetic.
bool is_n_approx(u64 x, u64 a, u64 n);

enum class ProgressionKind { geometric, power_ap };

struct ApproxWitness {
  ProgressionKind kind = ProgressionKind::geometric;
  u64 a = 0;
  /// Ratio r (geometric) or common difference d (power_ap).
  u64 step = 0;
  u64 l = 0;
  u64 n = 0;
  /// Exponent of the power progression; 1 for geometric.
  unsigned m = 1;
  /// (term, matching member) per term, in term order.
  std::vector<std::pair<u64, u64>> matches;
};

/// For each x the nearest member a with x/n < a < x n, nearest by
/// |ln a - ln x| with ties to the smaller member; nullopt when some x has
/// none. Every x n must be <= index.horizon().
std::optional<std::vector<std::pair<u64, u64>>> approx_subset(std::span<const u64> xs, const MembershipIndex& index,
                                                               u64 n);
std::optional<ApproxWitness> approx_subset(std::span<const u64> xs, const SetSpec& a, u64 n, u64 horizon);

/// Terms a r^i, i = 0..l-1; nullopt on overflow.
std::optional<std::vector<u64>> geometric_terms(u64 a, u64 r, u64 l);

/// Terms (ceil(a^(1/m)) + i d)^m, i = 0..l-1; nullopt on overflow.
std::optional<std::vector<u64>> power_ap_terms(u64 a, u64 d, u64 l, unsigned m);

/// Lexicographically least (a, r) with a > min_a, r > min_r and
/// a r^(l-1) n <= horizon whose terms form an n-approximate subset of A.
/// Throws DomainError when even the smallest candidate exceeds the horizon.
std::optional<ApproxWitness> find_geo(const SetSpec& a, u64 l, u64 n, u64 min_a, u64 min_r, u64 horizon);

/// Lexicographically least (a, d) with a > min_a, d > min_d whose power
/// progression (ceil(a^(1/m)) + i d)^m, i < l, is an n-approximate subset of
/// A with every term times n <= horizon.
std::optional<ApproxWitness> find_power_ap(const SetSpec& a, unsigned m, u64 l, u64 n, u64 min_a, u64 min_d,
                                           u64 horizon);

inline constexpr u64 kGpCertifyHorizon = 1'000'000;

struct GpCertificate {
  bool gp_free = true;
  /// A 3-term progression a < b < c with b^2 = a c, when one exists.
  std::optional<std::array<u64, 3>> witness;
  u64 pairs_checked = 0;
};

/// Exhaustive search for a < b <= horizon in A with b^2/a an integer in A.
/// Reports the counterexample with the least b, then least a.
GpCertificate gp_free_certify(const SetSpec& a, u64 horizon);

}  // namespace densitylab
