#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "densitylab/intset.hpp"

namespace densitylab {

/// Sorted members of a spec in [1, hi], shared by repeated scans.
///
/// Generated kinds small enough to fit the cache budget are sieved once and
/// kept as 32-bit values; everything else is streamed through MemberCursor on
/// each scan. Copies share state.
class MemberSource {
 public:
  /// Cached element budget for generated kinds.
  static constexpr u64 kCacheBudget = 30'000'000;

  MemberSource(const SetSpec& spec, u64 hi);

  const SetSpec& spec() const { return *spec_; }
  u64 hi() const { return hi_; }
  bool cached() const { return cache_ != nullptr; }

  class Cursor {
   public:
    bool done() const { return stream_ ? stream_->done() : pos_ == end_; }
    u64 value() const { return stream_ ? stream_->value() : *pos_; }
    void advance() {
      if (stream_) {
        stream_->advance();
      } else {
        ++pos_;
      }
    }

   private:
    friend class MemberSource;
    const std::uint32_t* pos_ = nullptr;
    const std::uint32_t* end_ = nullptr;
    std::optional<MemberCursor> stream_;
  };

  /// Members in [lo, hi()].
  Cursor cursor(u64 lo = 1) const { return cursor(lo, hi_); }
  /// Members in [lo, min(last, hi())].
  Cursor cursor(u64 lo, u64 last) const;

 private:
  std::shared_ptr<const SetSpec> spec_;
  u64 hi_;
  std::shared_ptr<const std::vector<std::uint32_t>> cache_;
};

}  // namespace densitylab
