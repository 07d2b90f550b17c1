#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "densitylab/intset.hpp"
#include "densitylab/members.hpp"
#include "densitylab/summation.hpp"

namespace densitylab {

enum class Functional { upper_count, lower_count, upper_log, lower_log, banach, banach_log, bd_m };

std::string_view to_string(Functional f);

struct Checkpoint {
  u64 n = 0;
  /// The statistic at n itself.
  double value = 0;
  /// Running max (upper kinds) or min (lower kinds); equals value for the
  /// window functionals.
  double extreme = 0;
  /// Start of the maximizing window (window functionals only).
  u64 k_star = 0;
};

struct DensityProfile {
  Functional functional = Functional::upper_count;
  std::vector<Checkpoint> checkpoints;
  u64 horizon = 0;
  std::optional<unsigned> m;
};

/// Powers of two from 2 up to horizon, followed by horizon itself.
std::vector<u64> default_checkpoints(u64 horizon);

/// |A∩[1,n]|/n at each checkpoint. The extreme is the exact running max
/// (upper_count) or min (lower_count) of |A∩[1,t]|/t over all 1 <= t <= n.
DensityProfile counting_profile(const MemberSource& a, Functional kind, std::span<const u64> checkpoints);
DensityProfile counting_profile(const SetSpec& a, Functional kind, u64 horizon,
                                std::span<const u64> checkpoints);

inline constexpr u64 kDefaultLogTailRatio = 4;

/// f_A(n)/ln n with f_A(n) = sum of 1/x over A∩[1,n]. The extreme is the max
/// (upper_log) or min (lower_log) over checkpoints in [n/tail_ratio, n].
/// Every checkpoint must be >= 2.
DensityProfile log_profile(const MemberSource& a, Functional kind, std::span<const u64> checkpoints,
                           u64 tail_ratio = kDefaultLogTailRatio);
DensityProfile log_profile(const SetSpec& a, Functional kind, u64 horizon, std::span<const u64> checkpoints,
                           u64 tail_ratio = kDefaultLogTailRatio);

struct WindowSup {
  double value = 0;
  /// Smallest window start attaining the maximum.
  u64 k_star = 1;
  FixedSum raw;
};

/// g_H(n) = max over k >= 1 with k*n <= H+1 of the sum of 1/x over A∩[k, kn).
/// Exact over every window start at which the window content changes.
WindowSup banach_window_sup(const MemberSource& a, u64 n, u64 horizon);
WindowSup banach_window_sup(const SetSpec& a, u64 n, u64 horizon);

/// Geometric grid round(2 * ratio^i) within [2, n_max], deduplicated, with
/// n_max appended.
std::vector<u64> geometric_grid(u64 n_max, double ratio);

inline constexpr double kDefaultGridRatio = 1.4142135623730951;

struct LbdEstimate {
  double value = 0;
  u64 n_star = 2;
  u64 k_star = 1;
  /// One entry per grid point: n, g_H(n)/ln n, k_star.
  std::vector<Checkpoint> grid;
};

/// min over the grid of g_H(n)/ln n.
LbdEstimate lbd_estimate(const MemberSource& a, u64 n_max, u64 horizon, double grid_ratio = kDefaultGridRatio);
LbdEstimate lbd_estimate(const SetSpec& a, u64 n_max, u64 horizon, double grid_ratio = kDefaultGridRatio);

struct CountSup {
  double value = 0;
  u64 k_star = 1;
  u64 count = 0;
};

/// max over 1 <= k <= H-n of |A∩[k,k+n]|/(n+1).
CountSup bd_estimate(const MemberSource& a, u64 n, u64 horizon);
CountSup bd_estimate(const SetSpec& a, u64 n, u64 horizon);

/// max over k with (ceil(k^(1/m))+n)^m <= H of
/// (1/(m n)) * sum of x^(-(m-1)/m) over A∩[k, (ceil(k^(1/m))+n)^m].
/// For m = 1 every weight is exactly 1, so raw / 2^64 is the window count.
WindowSup bdm_window_sup(const MemberSource& a, unsigned m, u64 n, u64 horizon);
WindowSup bdm_window_sup(const SetSpec& a, unsigned m, u64 n, u64 horizon);

}  // namespace densitylab
