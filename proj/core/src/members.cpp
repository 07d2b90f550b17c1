#include "densitylab/members.hpp"

#include <algorithm>
#include <cmath>

namespace densitylab {
namespace {

u64 estimated_count(SetKind kind, u64 hi) {
  switch (kind) {
    case SetKind::full: return hi;
    case SetKind::even: return hi / 2;
    case SetKind::squarefree: return hi / 10 * 7;
    case SetKind::primes:
      return hi < 100 ? hi : static_cast<u64>(1.3 * static_cast<double>(hi) / std::log(static_cast<double>(hi)));
    default: return kU64Max;
  }
}

}  // namespace

MemberSource::MemberSource(const SetSpec& spec, u64 hi)
    : spec_(std::make_shared<const SetSpec>(spec)), hi_(hi) {
  if (spec.is_listed() || hi > kSieveHorizon || estimated_count(spec.kind(), hi) > kCacheBudget) return;
  auto values = std::make_shared<std::vector<std::uint32_t>>();
  values->reserve(estimated_count(spec.kind(), hi));
  for_each_member(*spec_, 1, hi, [&](u64 x) { values->push_back(static_cast<std::uint32_t>(x)); });
  cache_ = std::move(values);
}

MemberSource::Cursor MemberSource::cursor(u64 lo, u64 last) const {
  last = std::min(last, hi_);
  Cursor c;
  if (cache_) {
    const auto* begin = cache_->data();
    const auto* end = begin + cache_->size();
    c.pos_ = lo > last ? end : std::lower_bound(begin, end, lo, [](std::uint32_t v, u64 x) { return v < x; });
    c.end_ = lo > last ? end : std::upper_bound(c.pos_, end, last, [](u64 x, std::uint32_t v) { return x < v; });
  } else {
    c.stream_.emplace(*spec_, lo, last);
  }
  return c;
}

}  // namespace densitylab
