#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace densitylab {

/// Worker count: DENSITYLAB_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Evaluates fn(i) for i in [0, count) and returns the results in index
/// order. Work is striped across up to thread_count() threads; the output
/// does not depend on the thread count. The first exception thrown by any
/// task (lowest index) is rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  auto stripe = [&](std::size_t offset) {
    for (std::size_t i = offset; i < count; i += workers) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    if (count > 0) {
      for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    }
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(stripe, w);
  stripe(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace densitylab
