#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "densitylab/arith.hpp"

namespace densitylab {

/// Largest `hi` accepted when a set has to be generated (sieved or counted
/// out) rather than read from an explicit list.
inline constexpr u64 kSieveHorizon = 1'000'000'000;

/// Upper bound on the number of elements `materialize` will return.
inline constexpr u64 kMaterializeLimit = 400'000'000;

struct Interval {
  u64 lo = 0;
  u64 hi = 0;

  u64 length() const { return hi - lo + 1; }
  bool contains(u64 x) const { return lo <= x && x <= hi; }
  auto operator<=>(const Interval&) const = default;
};

/// Sorted union of maximal integer intervals [a_i, b_i] with a_{i+1} > b_i + 1.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Sorts and coalesces overlapping or adjacent parts. Throws
  /// ValidationError for a part with lo == 0 or lo > hi.
  static IntervalSet from_components(std::vector<Interval> parts);

  std::span<const Interval> components() const { return parts_; }
  std::size_t component_count() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  /// Total number of integers covered.
  u128 cardinality() const;
  bool contains(u64 x) const;
  u64 min() const { return parts_.front().lo; }
  u64 max() const { return parts_.back().hi; }

  /// Intersection with [lo, hi].
  IntervalSet clip(u64 lo, u64 hi) const;

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Interval> parts_;
};

enum class SetKind { explicit_list, interval_union, squarefree, primes, full, even, example2 };

std::string_view to_string(SetKind kind);
std::optional<SetKind> parse_set_kind(std::string_view name);

/// Declarative description of a subset of the positive integers.
class SetSpec {
 public:
  static SetSpec full();
  static SetSpec even();
  static SetSpec squarefree();
  static SetSpec primes();
  static SetSpec empty();
  /// Elements must be strictly increasing and positive.
  static SetSpec explicit_list(std::vector<u64> elements);
  static SetSpec interval_union(IntervalSet set);
  /// Blocks [u_i, j*u_i] for i = 0..depth with u_0 = 2, u_{i+1} = (j*u_i)^3 + 1.
  /// Requires j >= 2 and depth >= 1. Blocks beyond the 64-bit range are
  /// dropped since no representable integer can fall in them.
  static SetSpec example2(u64 j, unsigned depth);

  SetKind kind() const { return kind_; }
  std::span<const u64> elements() const { return elements_; }
  /// Components for interval_union and example2 (empty for other kinds).
  const IntervalSet& intervals() const { return intervals_; }
  u64 j() const { return j_; }
  unsigned depth() const { return depth_; }

  /// True when membership can be decided from a finite list of elements or
  /// intervals (explicit, interval_union, example2).
  bool is_listed() const;
  bool is_finite() const { return kind_ == SetKind::explicit_list || kind_ == SetKind::interval_union; }

  bool operator==(const SetSpec&) const = default;

 private:
  SetKind kind_ = SetKind::explicit_list;
  std::vector<u64> elements_;
  IntervalSet intervals_;
  u64 j_ = 0;
  unsigned depth_ = 0;
};

/// The scan range [k, N*k] with normalizer ln N.
class Window {
 public:
  /// Throws ValidationError unless k >= 1, N >= 2 and N*k fits in 64 bits.
  Window(u64 k, u64 span);

  u64 k() const { return k_; }
  u64 span() const { return span_; }
  u64 lo() const { return k_; }
  u64 hi() const { return k_ * span_; }
  long double log_span() const;
  bool contains(u64 x) const { return k_ <= x && x <= hi(); }

  bool operator==(const Window&) const = default;

 private:
  u64 k_;
  u64 span_;
};

/// Members of `spec` in [lo, hi], strictly increasing.
std::vector<u64> materialize(const SetSpec& spec, u64 lo, u64 hi);

bool contains(const SetSpec& spec, u64 x);

/// Members of `spec` in [lo, hi] as maximal runs. Throws CapacityError past
/// kMaterializeLimit runs.
IntervalSet member_intervals(const SetSpec& spec, u64 lo, u64 hi);

/// The sparse block union [u_i, j*u_i], i = 0..depth, with u_0 = 2 and
/// u_{i+1} = (j*u_i)^3 + 1. Throws CapacityError when j*u_depth leaves the 64-bit range.
IntervalSet example2_set(u64 j, unsigned depth);

struct Classification {
  bool big = false;
  bool separated = false;
};

/// big: every component has b/a >= ratio_floor. separated: a_{i+1} > 2*b_i.
Classification classify(const IntervalSet& set, u64 n, double ratio_floor = 2.5);

/// Components [floor(N/b_i), floor(N/a_i)] in ascending order.
/// Requires separated components with every b_i <= N/2.
IntervalSet invert_intervals(const IntervalSet& set, u64 n);

/// Pull-style cursor over the members of a spec in [lo, hi]. The spec must
/// outlive the cursor.
///
/// Sieve-backed kinds are generated one fixed-width segment at a time, so
/// memory stays bounded regardless of the range.
class MemberCursor {
 public:
  MemberCursor(const SetSpec& spec, u64 lo, u64 hi);

  bool done() const { return done_; }
  u64 value() const { return current_; }
  void advance();

 private:
  void fill_segment();
  void settle();

  const SetSpec* spec_;
  u64 lo_;
  u64 hi_;
  bool done_ = false;
  u64 current_ = 0;
  // explicit / interval state
  std::size_t index_ = 0;
  // generated-kind state
  std::vector<u64> buffer_;
  std::size_t buffer_pos_ = 0;
  u64 next_segment_ = 0;
  std::vector<u64> base_primes_;
};

template <typename Fn>
void for_each_member(const SetSpec& spec, u64 lo, u64 hi, Fn&& fn) {
  for (MemberCursor c(spec, lo, hi); !c.done(); c.advance()) fn(c.value());
}

/// Membership and neighbour queries over [1, horizon], built once.
class MembershipIndex {
 public:
  MembershipIndex(const SetSpec& spec, u64 horizon);

  u64 horizon() const { return horizon_; }
  bool contains(u64 x) const;
  /// Largest member <= x (x is clamped to the horizon).
  std::optional<u64> prev(u64 x) const;
  /// Smallest member >= x that is <= horizon.
  std::optional<u64> next(u64 x) const;

 private:
  bool bit(u64 x) const { return (bits_[x >> 6] >> (x & 63)) & 1u; }

  SetSpec spec_;
  u64 horizon_;
  std::vector<std::uint64_t> bits_;  // sieve kinds only; bit x set iff x in set
};

/// Primes up to `limit` by a plain sieve.
std::vector<u64> primes_up_to(u64 limit);

}  // namespace densitylab
