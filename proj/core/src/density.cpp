#include "densitylab/density.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "densitylab/errors.hpp"
#include "densitylab/parallel.hpp"

namespace densitylab {
namespace {

// Exact ordering of count/t fractions.
struct Ratio {
  u64 num = 0;
  u64 den = 1;
  bool operator<(const Ratio& o) const { return u128{num} * o.den < u128{o.num} * den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

std::vector<u64> sorted_checkpoints(std::span<const u64> checkpoints, u64 horizon, u64 min_n) {
  std::vector<u64> out(checkpoints.begin(), checkpoints.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (u64 n : out) {
    if (n < min_n) {
      throw ValidationError("checkpoint " + std::to_string(n) + " is below " + std::to_string(min_n));
    }
    if (n > horizon) {
      throw ValidationError("checkpoint " + std::to_string(n) + " exceeds the horizon " +
                            std::to_string(horizon));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Functional f) {
  switch (f) {
    case Functional::upper_count: return "upper_count";
    case Functional::lower_count: return "lower_count";
    case Functional::upper_log: return "upper_log";
    case Functional::lower_log: return "lower_log";
    case Functional::banach: return "banach";
    case Functional::banach_log: return "banach_log";
    case Functional::bd_m: return "bd_m";
  }
  return "unknown";
}

std::vector<u64> default_checkpoints(u64 horizon) {
  std::vector<u64> out;
  for (u64 p = 2; p <= horizon; p *= 2) {
    out.push_back(p);
    if (p > horizon / 2) break;
  }
  if (out.empty() || out.back() != horizon) out.push_back(horizon);
  return out;
}

DensityProfile counting_profile(const MemberSource& a, Functional kind, std::span<const u64> checkpoints) {
  if (kind != Functional::upper_count && kind != Functional::lower_count) {
    throw ValidationError("counting_profile takes upper_count or lower_count");
  }
  const bool upper = kind == Functional::upper_count;
  const auto points = sorted_checkpoints(checkpoints, a.hi(), 1);
  DensityProfile out{kind, {}, a.hi(), std::nullopt};
  if (points.empty()) return out;

  std::optional<Ratio> best;
  auto consider = [&](u64 count, u64 t) {
    const Ratio r{count, t};
    if (!best || (upper ? *best < r : r < *best)) best = r;
  };
  u64 count = 0;
  auto cur = a.cursor(1, points.back());
  for (u64 n : points) {
    for (; !cur.done() && cur.value() <= n; cur.advance()) {
      const u64 x = cur.value();
      // count/t is constant-numerator and decreasing between members, so the
      // extremes sit just before and at each member.
      if (x > 1) consider(count, x - 1);
      ++count;
      consider(count, x);
    }
    consider(count, n);
    const double value = static_cast<double>(count) / static_cast<double>(n);
    out.checkpoints.push_back({n, value, best->value(), 0});
  }
  return out;
}

DensityProfile counting_profile(const SetSpec& a, Functional kind, u64 horizon,
                                std::span<const u64> checkpoints) {
  return counting_profile(MemberSource(a, horizon), kind, checkpoints);
}

DensityProfile log_profile(const MemberSource& a, Functional kind, std::span<const u64> checkpoints,
                           u64 tail_ratio) {
  if (kind != Functional::upper_log && kind != Functional::lower_log) {
    throw ValidationError("log_profile takes upper_log or lower_log");
  }
  if (tail_ratio < 1) throw ValidationError("log tail ratio must be >= 1");
  const bool upper = kind == Functional::upper_log;
  const auto points = sorted_checkpoints(checkpoints, a.hi(), 2);
  DensityProfile out{kind, {}, a.hi(), std::nullopt};
  if (points.empty()) return out;

  FixedSum f;
  auto cur = a.cursor(1, points.back());
  for (u64 n : points) {
    for (; !cur.done() && cur.value() <= n; cur.advance()) f.add(reciprocal_weight(cur.value()));
    const double value = static_cast<double>(f.value() / std::log(static_cast<long double>(n)));
    double extreme = value;
    for (const auto& prev : out.checkpoints) {
      if (prev.n * tail_ratio < n) continue;
      extreme = upper ? std::max(extreme, prev.value) : std::min(extreme, prev.value);
    }
    out.checkpoints.push_back({n, value, extreme, 0});
  }
  return out;
}

DensityProfile log_profile(const SetSpec& a, Functional kind, u64 horizon, std::span<const u64> checkpoints,
                           u64 tail_ratio) {
  return log_profile(MemberSource(a, horizon), kind, checkpoints, tail_ratio);
}

WindowSup banach_window_sup(const MemberSource& a, u64 n, u64 horizon) {
  if (n < 2) throw ValidationError("banach_window_sup requires n >= 2");
  if (n > horizon) throw DomainError("banach_window_sup requires n <= H");
  if (horizon > a.hi()) throw ValidationError("member source does not cover the horizon");
  const u64 k_max = horizon / n + (horizon % n == n - 1 ? 1 : 0);  // floor((H+1)/n)
  const u64 last = k_max * n - 1;

  auto right = a.cursor(1, last);
  auto left = a.cursor(1, last);
  FixedSum sum;
  WindowSup best;
  auto evaluate = [&](u64 k) {
    for (; !right.done() && right.value() <= k * n - 1; right.advance()) sum.add(reciprocal_weight(right.value()));
    for (; !left.done() && left.value() < k; left.advance()) sum.sub(reciprocal_weight(left.value()));
    if (sum > best.raw) {
      best.raw = sum;
      best.k_star = k;
    }
  };
  evaluate(1);
  u64 last_k = 1;
  // A member x enters the window [k, kn) at k = floor(x/n) + 1.
  for (auto cand = a.cursor(1, last); !cand.done(); cand.advance()) {
    const u64 k = cand.value() / n + 1;
    if (k <= last_k) continue;
    evaluate(k);
    last_k = k;
  }
  best.value = static_cast<double>(best.raw.value());
  return best;
}

WindowSup banach_window_sup(const SetSpec& a, u64 n, u64 horizon) {
  return banach_window_sup(MemberSource(a, horizon), n, horizon);
}

std::vector<u64> geometric_grid(u64 n_max, double ratio) {
  if (!(ratio > 1.0)) throw ValidationError("grid ratio must be > 1");
  if (n_max < 2) throw ValidationError("grid requires n_max >= 2");
  std::vector<u64> out;
  for (int i = 0;; ++i) {
    const long double v = 2.0L * std::pow(static_cast<long double>(ratio), i);
    if (v > static_cast<long double>(n_max) + 0.5L) break;
    const u64 n = static_cast<u64>(std::llroundl(v));
    if (n > n_max) break;
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.empty() || out.back() != n_max) out.push_back(n_max);
  return out;
}

LbdEstimate lbd_estimate(const MemberSource& a, u64 n_max, u64 horizon, double grid_ratio) {
  if (n_max < 2 || n_max > horizon) throw DomainError("lbd_estimate requires 2 <= n_max <= H");
  const auto grid = geometric_grid(n_max, grid_ratio);
  const auto sups = parallel_map(grid.size(), [&](std::size_t i) { return banach_window_sup(a, grid[i], horizon); });
  LbdEstimate out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v =
        static_cast<double>(sups[i].raw.value() / std::log(static_cast<long double>(grid[i])));
    out.grid.push_back({grid[i], v, v, sups[i].k_star});
    if (i == 0 || v < out.value) {
      out.value = v;
      out.n_star = grid[i];
      out.k_star = sups[i].k_star;
    }
  }
  return out;
}

LbdEstimate lbd_estimate(const SetSpec& a, u64 n_max, u64 horizon, double grid_ratio) {
  return lbd_estimate(MemberSource(a, horizon), n_max, horizon, grid_ratio);
}

CountSup bd_estimate(const MemberSource& a, u64 n, u64 horizon) {
  if (n < 1 || n >= horizon) throw DomainError("bd_estimate requires 1 <= n < H");
  if (horizon > a.hi()) throw ValidationError("member source does not cover the horizon");
  const u64 k_max = horizon - n;
  auto right = a.cursor(1, horizon);
  auto left = a.cursor(1, horizon);
  u64 count = 0;
  CountSup best{0, 1, 0};
  bool any = false;
  auto evaluate = [&](u64 k) {
    for (; !right.done() && right.value() <= k + n; right.advance()) ++count;
    for (; !left.done() && left.value() < k; left.advance()) --count;
    if (!any || count > best.count) {
      best.count = count;
      best.k_star = k;
      any = true;
    }
  };
  // Sliding right never loses members until the left end passes one, so a
  // maximal window starts at a member or at the last admissible start.
  for (auto cand = a.cursor(1, k_max); !cand.done(); cand.advance()) evaluate(cand.value());
  evaluate(k_max);
  best.value = static_cast<double>(best.count) / static_cast<double>(n + 1);
  return best;
}

CountSup bd_estimate(const SetSpec& a, u64 n, u64 horizon) {
  return bd_estimate(MemberSource(a, horizon), n, horizon);
}

WindowSup bdm_window_sup(const MemberSource& a, unsigned m, u64 n, u64 horizon) {
  if (m < 1) throw ValidationError("bdm_window_sup requires m >= 1");
  if (n < 1) throw ValidationError("bdm_window_sup requires n >= 1");
  if (horizon > a.hi()) throw ValidationError("member source does not cover the horizon");
  const auto top = checked_add(iroot_ceil(horizon, m), n);
  if (!top || !checked_pow(*top, m)) {
    throw CapacityError("(ceil(H^(1/m)) + n)^m is not representable in 64 bits");
  }

  auto right = a.cursor(1, horizon);
  auto left = a.cursor(1, horizon);
  std::deque<u128> pending;  // weights of members currently in the window
  FixedSum sum;
  WindowSup best;
  // Within the block (r-1)^m < k <= r^m the window end is fixed at (r+n)^m,
  // so only the block's first k can be maximal.
  for (u64 r = 1;; ++r) {
    const u64 end = *checked_pow(r + n, m);
    if (end > horizon) break;
    const u64 k = *checked_pow(r - 1, m) + 1;
    for (; !right.done() && right.value() <= end; right.advance()) {
      const u128 w = root_weight(right.value(), m);
      pending.push_back(w);
      sum.add(w);
    }
    for (; !left.done() && left.value() < k; left.advance()) {
      sum.sub(pending.front());
      pending.pop_front();
    }
    if (sum > best.raw) {
      best.raw = sum;
      best.k_star = k;
    }
  }
  best.value = static_cast<double>(best.raw.value() / (static_cast<long double>(m) * n));
  return best;
}

WindowSup bdm_window_sup(const SetSpec& a, unsigned m, u64 n, u64 horizon) {
  return bdm_window_sup(MemberSource(a, horizon), m, n, horizon);
}

}  // namespace densitylab
