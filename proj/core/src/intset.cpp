#include "densitylab/intset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "densitylab/errors.hpp"

namespace densitylab {
namespace {

constexpr u64 kSegmentWidth = u64{1} << 16;

bool is_generated(SetKind kind) {
  return kind == SetKind::full || kind == SetKind::even || kind == SetKind::squarefree ||
         kind == SetKind::primes;
}

bool is_sieved(SetKind kind) { return kind == SetKind::squarefree || kind == SetKind::primes; }

// Primes up to the cube root of 2^64, enough to decide squarefreeness of any u64.
const std::vector<u64>& cube_root_primes() {
  static const std::vector<u64> primes = primes_up_to(2'642'246);
  return primes;
}

bool is_squarefree(u64 x) {
  if (x == 0) return false;
  const u64 cube_root = iroot_floor(x, 3);
  u64 rest = x;
  for (u64 p : cube_root_primes()) {
    if (p > cube_root) break;
    if (rest % p == 0) {
      rest /= p;
      if (rest % p == 0) return false;
    }
  }
  // rest has no prime factor <= cube_root(x): it is 1, q, q*r or q^2.
  if (rest > 1) {
    const u64 s = iroot_floor(rest, 2);
    if (s > 1 && s * s == rest) return false;
  }
  return true;
}

// Members of a generated kind in [start, end] appended to out.
void generate_segment(SetKind kind, u64 start, u64 end, std::span<const u64> base_primes,
                      std::vector<u64>& out) {
  out.clear();
  switch (kind) {
    case SetKind::full:
      for (u64 x = start; x <= end; ++x) out.push_back(x);
      return;
    case SetKind::even:
      for (u64 x = start + (start & 1); x <= end; x += 2) out.push_back(x);
      return;
    case SetKind::squarefree:
    case SetKind::primes: {
      std::vector<std::uint8_t> marked(end - start + 1, 0);
      for (u64 p : base_primes) {
        if (kind == SetKind::squarefree) {
          const u64 sq = p * p;
          if (sq > end) break;
          for (u64 m = ceil_div(start, sq) * sq; m <= end; m += sq) marked[m - start] = 1;
        } else {
          if (p * p > end) break;
          for (u64 m = std::max(p * p, ceil_div(start, p) * p); m <= end; m += p) {
            marked[m - start] = 1;
          }
        }
      }
      for (u64 x = start; x <= end; ++x) {
        if (marked[x - start]) continue;
        if (kind == SetKind::primes && x < 2) continue;
        out.push_back(x);
      }
      return;
    }
    default:
      return;
  }
}

void check_generated_horizon(const SetSpec& spec, u64 hi) {
  if (is_generated(spec.kind()) && hi > kSieveHorizon) {
    throw CapacityError("horizon " + std::to_string(hi) + " exceeds the supported limit " +
                        std::to_string(kSieveHorizon) + " for kind " +
                        std::string(to_string(spec.kind())));
  }
}

std::vector<Interval> example2_components(u64 j, unsigned depth, bool strict) {
  std::vector<Interval> parts;
  u64 u = 2;
  for (unsigned i = 0; i <= depth; ++i) {
    auto top = checked_mul(j, u);
    if (!top) {
      if (strict) throw CapacityError("example2 block " + std::to_string(i) + " overflows 64 bits");
      parts.push_back({u, kU64Max});
      break;
    }
    parts.push_back({u, *top});
    if (i == depth) break;
    auto cube = checked_pow(*top, 3);
    if (!cube || *cube == kU64Max) {
      if (strict) {
        throw CapacityError("example2 block " + std::to_string(i + 1) + " overflows 64 bits");
      }
      break;
    }
    u = *cube + 1;
  }
  return parts;
}

}  // namespace

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (u64 m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

// IntervalSet ---------------------------------------------------------------

IntervalSet IntervalSet::from_components(std::vector<Interval> parts) {
  for (const auto& part : parts) {
    if (part.lo == 0 || part.lo > part.hi) {
      throw ValidationError("interval [" + std::to_string(part.lo) + ", " + std::to_string(part.hi) +
                            "] is not a nonempty range of positive integers");
    }
  }
  std::sort(parts.begin(), parts.end());
  IntervalSet out;
  for (const auto& part : parts) {
    if (!out.parts_.empty() &&
        static_cast<u128>(part.lo) <= static_cast<u128>(out.parts_.back().hi) + 1) {
      out.parts_.back().hi = std::max(out.parts_.back().hi, part.hi);
    } else {
      out.parts_.push_back(part);
    }
  }
  return out;
}

u128 IntervalSet::cardinality() const {
  u128 total = 0;
  for (const auto& part : parts_) total += part.length();
  return total;
}

bool IntervalSet::contains(u64 x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](u64 v, const Interval& part) { return v < part.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->hi >= x;
}

IntervalSet IntervalSet::clip(u64 lo, u64 hi) const {
  IntervalSet out;
  for (const auto& part : parts_) {
    if (part.hi < lo || part.lo > hi) continue;
    out.parts_.push_back({std::max(part.lo, lo), std::min(part.hi, hi)});
  }
  return out;
}

// SetSpec -------------------------------------------------------------------

std::string_view to_string(SetKind kind) {
  switch (kind) {
    case SetKind::explicit_list: return "explicit";
    case SetKind::interval_union: return "interval_union";
    case SetKind::squarefree: return "squarefree";
    case SetKind::primes: return "primes";
    case SetKind::full: return "full";
    case SetKind::even: return "even";
    case SetKind::example2: return "example2";
  }
  return "unknown";
}

std::optional<SetKind> parse_set_kind(std::string_view name) {
  for (auto kind : {SetKind::explicit_list, SetKind::interval_union, SetKind::squarefree,
                    SetKind::primes, SetKind::full, SetKind::even, SetKind::example2}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

SetSpec SetSpec::full() {
  SetSpec s;
  s.kind_ = SetKind::full;
  return s;
}

SetSpec SetSpec::even() {
  SetSpec s;
  s.kind_ = SetKind::even;
  return s;
}

SetSpec SetSpec::squarefree() {
  SetSpec s;
  s.kind_ = SetKind::squarefree;
  return s;
}

SetSpec SetSpec::primes() {
  SetSpec s;
  s.kind_ = SetKind::primes;
  return s;
}

SetSpec SetSpec::empty() { return explicit_list({}); }

SetSpec SetSpec::explicit_list(std::vector<u64> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == 0) throw ValidationError("explicit set elements must be positive");
    if (i > 0 && elements[i] <= elements[i - 1]) {
      throw ValidationError("explicit set elements must be strictly increasing");
    }
  }
  SetSpec s;
  s.kind_ = SetKind::explicit_list;
  s.elements_ = std::move(elements);
  return s;
}

SetSpec SetSpec::interval_union(IntervalSet set) {
  SetSpec s;
  s.kind_ = SetKind::interval_union;
  s.intervals_ = std::move(set);
  return s;
}

SetSpec SetSpec::example2(u64 j, unsigned depth) {
  if (j < 2) throw ValidationError("example2 requires j >= 2");
  if (depth < 1) throw ValidationError("example2 requires depth >= 1");
  SetSpec s;
  s.kind_ = SetKind::example2;
  s.j_ = j;
  s.depth_ = depth;
  s.intervals_ = IntervalSet::from_components(example2_components(j, depth, false));
  return s;
}

bool SetSpec::is_listed() const {
  return kind_ == SetKind::explicit_list || kind_ == SetKind::interval_union ||
         kind_ == SetKind::example2;
}

// Window --------------------------------------------------------------------

Window::Window(u64 k, u64 span) : k_(k), span_(span) {
  if (k == 0) throw ValidationError("window start k must be >= 1");
  if (span < 2) throw ValidationError("window span N must be >= 2");
  if (!checked_mul(k, span)) throw ValidationError("window end N*k overflows 64 bits");
}

long double Window::log_span() const { return std::log(static_cast<long double>(span_)); }

// Free operations -----------------------------------------------------------

std::vector<u64> materialize(const SetSpec& spec, u64 lo, u64 hi) {
  if (lo == 0) throw ValidationError("materialize requires lo >= 1");
  if (lo > hi) throw ValidationError("materialize requires lo <= hi");
  check_generated_horizon(spec, hi);
  if (spec.kind() == SetKind::full || spec.kind() == SetKind::interval_union ||
      spec.kind() == SetKind::example2) {
    const u128 count = spec.kind() == SetKind::full
                           ? u128{hi - lo + 1}
                           : spec.intervals().clip(lo, hi).cardinality();
    if (count > kMaterializeLimit) {
      throw CapacityError("materialize would return more than " + std::to_string(kMaterializeLimit) +
                          " elements");
    }
  }
  std::vector<u64> out;
  for_each_member(spec, lo, hi, [&out](u64 x) { out.push_back(x); });
  return out;
}

IntervalSet member_intervals(const SetSpec& spec, u64 lo, u64 hi) {
  if (lo == 0) throw ValidationError("member_intervals requires lo >= 1");
  if (lo > hi) throw ValidationError("member_intervals requires lo <= hi");
  switch (spec.kind()) {
    case SetKind::full: return IntervalSet::from_components({{lo, hi}});
    case SetKind::interval_union:
    case SetKind::example2: return spec.intervals().clip(lo, hi);
    default: break;
  }
  check_generated_horizon(spec, hi);
  std::vector<Interval> runs;
  for_each_member(spec, lo, hi, [&runs](u64 x) {
    if (!runs.empty() && runs.back().hi + 1 == x) {
      runs.back().hi = x;
      return;
    }
    if (runs.size() == kMaterializeLimit) {
      throw CapacityError("member_intervals would return more than " + std::to_string(kMaterializeLimit) + " runs");
    }
    runs.push_back({x, x});
  });
  return IntervalSet::from_components(std::move(runs));
}

bool contains(const SetSpec& spec, u64 x) {
  if (x == 0) return false;
  switch (spec.kind()) {
    case SetKind::full: return true;
    case SetKind::even: return x % 2 == 0;
    case SetKind::squarefree: return is_squarefree(x);
    case SetKind::primes: return is_prime_u64(x);
    case SetKind::explicit_list:
      return std::binary_search(spec.elements().begin(), spec.elements().end(), x);
    case SetKind::interval_union:
    case SetKind::example2: return spec.intervals().contains(x);
  }
  return false;
}

IntervalSet example2_set(u64 j, unsigned depth) {
  if (j < 2) throw ValidationError("example2 requires j >= 2");
  return IntervalSet::from_components(example2_components(j, depth, true));
}

Classification classify(const IntervalSet& set, u64 n, double ratio_floor) {
  if (set.empty()) throw DomainError("classify requires a nonempty interval set");
  if (set.max() > n) throw DomainError("classify requires every component inside [1, N]");
  Classification out{true, true};
  const auto parts = set.components();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const long double ratio = static_cast<long double>(parts[i].hi) / parts[i].lo;
    if (ratio < static_cast<long double>(ratio_floor)) out.big = false;
    if (i + 1 < parts.size() && u128{parts[i + 1].lo} <= u128{parts[i].hi} * 2) {
      out.separated = false;
    }
  }
  return out;
}

IntervalSet invert_intervals(const IntervalSet& set, u64 n) {
  if (set.empty()) return {};
  if (!classify(set, n, 1.0).separated) {
    throw DomainError("invert_intervals requires separated components (a_{i+1} > 2 b_i)");
  }
  if (u128{set.max()} * 2 > n) throw DomainError("invert_intervals requires every b_i <= N/2");
  std::vector<Interval> parts;
  parts.reserve(set.component_count());
  for (const auto& part : set.components()) parts.push_back({n / part.hi, n / part.lo});
  return IntervalSet::from_components(std::move(parts));
}

// MemberCursor --------------------------------------------------------------

MemberCursor::MemberCursor(const SetSpec& spec, u64 lo, u64 hi) : spec_(&spec), lo_(lo), hi_(hi) {
  if (lo_ == 0) lo_ = 1;
  if (lo_ > hi_) {
    done_ = true;
    return;
  }
  check_generated_horizon(spec, hi_);
  switch (spec.kind()) {
    case SetKind::explicit_list: {
      const auto el = spec.elements();
      index_ = static_cast<std::size_t>(std::lower_bound(el.begin(), el.end(), lo_) - el.begin());
      break;
    }
    case SetKind::interval_union:
    case SetKind::example2: {
      const auto parts = spec.intervals().components();
      index_ = static_cast<std::size_t>(
          std::lower_bound(parts.begin(), parts.end(), lo_,
                           [](const Interval& p, u64 v) { return p.hi < v; }) -
          parts.begin());
      if (index_ < parts.size()) current_ = std::max(parts[index_].lo, lo_);
      break;
    }
    default:
      if (is_sieved(spec.kind())) base_primes_ = primes_up_to(iroot_floor(hi_, 2));
      next_segment_ = lo_;
      fill_segment();
      break;
  }
  settle();
}

void MemberCursor::fill_segment() {
  buffer_pos_ = 0;
  buffer_.clear();
  while (buffer_.empty() && next_segment_ != 0 && next_segment_ <= hi_) {
    const u64 start = next_segment_;
    const u64 end = hi_ - start < kSegmentWidth ? hi_ : start + kSegmentWidth - 1;
    generate_segment(spec_->kind(), start, end, base_primes_, buffer_);
    next_segment_ = end == hi_ ? 0 : end + 1;
  }
}

void MemberCursor::settle() {
  switch (spec_->kind()) {
    case SetKind::explicit_list: {
      const auto el = spec_->elements();
      if (index_ >= el.size() || el[index_] > hi_) {
        done_ = true;
      } else {
        current_ = el[index_];
      }
      return;
    }
    case SetKind::interval_union:
    case SetKind::example2: {
      const auto parts = spec_->intervals().components();
      if (index_ >= parts.size() || current_ > hi_) done_ = true;
      return;
    }
    default:
      if (buffer_pos_ >= buffer_.size()) {
        done_ = true;
      } else {
        current_ = buffer_[buffer_pos_];
      }
      return;
  }
}

void MemberCursor::advance() {
  if (done_) return;
  switch (spec_->kind()) {
    case SetKind::explicit_list:
      ++index_;
      break;
    case SetKind::interval_union:
    case SetKind::example2: {
      const auto parts = spec_->intervals().components();
      if (current_ < parts[index_].hi) {
        ++current_;
      } else {
        ++index_;
        if (index_ < parts.size()) current_ = parts[index_].lo;
      }
      break;
    }
    default:
      if (++buffer_pos_ >= buffer_.size()) fill_segment();
      break;
  }
  settle();
}

// MembershipIndex -----------------------------------------------------------

MembershipIndex::MembershipIndex(const SetSpec& spec, u64 horizon) : spec_(spec), horizon_(horizon) {
  if (horizon_ == 0) throw ValidationError("membership index horizon must be >= 1");
  if (is_sieved(spec_.kind())) {
    check_generated_horizon(spec_, horizon_);
    bits_.assign(horizon_ / 64 + 1, 0);
    for_each_member(spec_, 1, horizon_, [this](u64 x) { bits_[x >> 6] |= std::uint64_t{1} << (x & 63); });
  }
}

bool MembershipIndex::contains(u64 x) const {
  if (x == 0) return false;
  if (!bits_.empty() && x <= horizon_) return bit(x);
  return densitylab::contains(spec_, x);
}

std::optional<u64> MembershipIndex::prev(u64 x) const {
  x = std::min(x, horizon_);
  if (x == 0) return std::nullopt;
  switch (spec_.kind()) {
    case SetKind::full: return x;
    case SetKind::even:
      if (x < 2) return std::nullopt;
      return x & ~u64{1};
    case SetKind::explicit_list: {
      const auto el = spec_.elements();
      auto it = std::upper_bound(el.begin(), el.end(), x);
      if (it == el.begin()) return std::nullopt;
      return *std::prev(it);
    }
    case SetKind::interval_union:
    case SetKind::example2: {
      const auto parts = spec_.intervals().components();
      auto it = std::upper_bound(parts.begin(), parts.end(), x,
                                 [](u64 v, const Interval& p) { return v < p.lo; });
      if (it == parts.begin()) return std::nullopt;
      return std::min(std::prev(it)->hi, x);
    }
    default: {
      // Scan words downward from x.
      u64 word = x >> 6;
      std::uint64_t bits = bits_[word];
      const unsigned offset = static_cast<unsigned>(x & 63);
      if (offset < 63) bits &= (std::uint64_t{1} << (offset + 1)) - 1;
      while (true) {
        if (bits != 0) return word * 64 + (63 - static_cast<u64>(std::countl_zero(bits)));
        if (word == 0) return std::nullopt;
        bits = bits_[--word];
      }
    }
  }
}

std::optional<u64> MembershipIndex::next(u64 x) const {
  if (x == 0) x = 1;
  if (x > horizon_) return std::nullopt;
  std::optional<u64> out;
  switch (spec_.kind()) {
    case SetKind::full: out = x; break;
    case SetKind::even: out = x + (x & 1); break;
    case SetKind::explicit_list: {
      const auto el = spec_.elements();
      auto it = std::lower_bound(el.begin(), el.end(), x);
      if (it != el.end()) out = *it;
      break;
    }
    case SetKind::interval_union:
    case SetKind::example2: {
      const auto parts = spec_.intervals().components();
      auto it = std::lower_bound(parts.begin(), parts.end(), x,
                                 [](const Interval& p, u64 v) { return p.hi < v; });
      if (it != parts.end()) out = std::max(it->lo, x);
      break;
    }
    default: {
      u64 word = x >> 6;
      std::uint64_t bits = bits_[word] & (~std::uint64_t{0} << (x & 63));
      while (true) {
        if (bits != 0) {
          out = word * 64 + static_cast<u64>(std::countr_zero(bits));
          break;
        }
        if (++word >= bits_.size()) break;
        bits = bits_[word];
      }
    }
  }
  if (out && *out > horizon_) return std::nullopt;
  return out;
}

}  // namespace densitylab
