#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "densitylab/intset.hpp"

namespace densitylab {

/// Ratio tolerance rho = num/den >= 1: a ~ b iff max(a,b) <= rho * min(a,b).
class RatioCut {
 public:
  /// Throws ValidationError unless den >= 1 and num >= den.
  RatioCut(u64 num, u64 den = 1);

  /// Parses "10", "2.5" or "5/2" exactly.
  static RatioCut parse(std::string_view text);

  u64 num() const { return num_; }
  u64 den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  long double log() const;
  /// rho^2, the tolerance products of equivalent pairs satisfy.
  RatioCut squared() const;
  std::string to_string() const;

  bool operator==(const RatioCut&) const = default;

 private:
  u64 num_;
  u64 den_;
};

/// Error bound of one closed-range harmonic or power sum.
inline constexpr long double kRangeSumSlack = 1e-15L;

struct WindowMeasureReport {
  Window window;
  double value = 0;
  double error_bound = 0;
};

/// Sum of 1/(a ln N) over S. Throws DomainError when S leaves [k, Nk].
WindowMeasureReport nu(const Window& w, const IntervalSet& s);
/// Element-list form; elements must be strictly increasing.
WindowMeasureReport nu(const Window& w, std::span<const u64> elements);

/// (ln b - ln a)/ln N for k <= a <= b <= Nk.
double interval_measure(const Window& w, u64 a, u64 b);

struct BigEstimate {
  double value = 0;
  /// Bound on |value - nu(S)|: sum of ln(a_i/(a_i - 1))/ln N plus rounding.
  double tolerance = 0;
};

/// (1/ln N) * sum of (ln b_i - ln a_i). Throws DomainError when a component
/// has b_i/a_i < ratio_floor or leaves the window.
BigEstimate big_estimate(const Window& w, const IntervalSet& s, double ratio_floor = 2.5);

/// (ln a - ln k)/ln N.
double phi(const Window& w, u64 a);

/// [max(k, ceil(a/rho)), min(Nk, floor(a rho))].
Interval monad_of(const Window& w, const RatioCut& cut, u64 a);

bool equivalent(const RatioCut& cut, u64 a, u64 b);

struct TransportReport {
  double nu_source = 0;
  double nu_image = 0;
  double discrepancy = 0;
  /// Tolerance the discrepancy is expected to stay under.
  double bound = 0;
};

/// Compares nu over (k, N) of S with nu over (sk, N) of the scaled
/// components [s a_i, s b_i]. Requires big components inside the window.
TransportReport scale_check(const Window& w, const IntervalSet& s, u64 scale, double ratio_floor = 2.5);

/// floor(N/u) for 1 <= u <= N.
u64 invert_point(u64 n, u64 u);

inline constexpr u64 kDefaultMargin = 1000;

/// nu(S) against nu(invert_intervals(S, N)) in the window (1, N). Requires
/// k = 1, big and separated components, and every b_i <= N/margin.
TransportReport inversion_check(const Window& w, const IntervalSet& s, u64 margin = kDefaultMargin,
                                double ratio_floor = 2.5);

struct LocalDensity {
  double r = 0;
  double value = 0;
};

/// For each r: (sum of 1/a over X∩[x, floor(x r)]) / ln r. Every r must
/// exceed rho and x * max(r) must stay inside the window.
std::vector<LocalDensity> density_plus(const Window& w, const RatioCut& cut, const IntervalSet& x_set, u64 x,
                                       std::span<const double> r_grid);
/// Mirror of density_plus over [floor(x/r), x].
std::vector<LocalDensity> density_minus(const Window& w, const RatioCut& cut, const IntervalSet& x_set, u64 x,
                                        std::span<const double> r_grid);
/// Minimum local value over the grid, the finite density estimate.
double density_estimate(std::span<const LocalDensity> local);

/// Largest element of the root window [k, (ceil(k^(1/m)) + Nroot)^m].
u64 root_window_end(u64 k, u64 nroot, unsigned m);

/// (1/(m Nroot)) * sum of a^(-(m-1)/m) over S; S must lie in the root window.
double nu_m(u64 nroot, unsigned m, std::span<const u64> elements, u64 k);
double nu_m(u64 nroot, unsigned m, const IntervalSet& s, u64 k);

/// (b^(1/m) - a^(1/m))/Nroot.
double nu_m_interval_form(u64 nroot, unsigned m, u64 a, u64 b);

/// (ceil(a^(1/m)) + c)^m. Throws CapacityError on overflow.
u64 root_shift(u64 a, u64 c, unsigned m);

}  // namespace densitylab
