#include "densitylab/monad.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "densitylab/errors.hpp"
#include "densitylab/summation.hpp"

namespace densitylab {
namespace {

u64 parse_digits(std::string_view text, std::string_view whole) {
  u64 v = 0;
  if (text.empty()) throw ValidationError("malformed ratio '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError("malformed ratio '" + std::string(whole) + "'");
  }
  return v;
}

void require_inside(const Window& w, u64 a, u64 b) {
  if (a < w.lo() || b > w.hi()) {
    throw DomainError("[" + std::to_string(a) + ", " + std::to_string(b) + "] leaves the window [" +
                      std::to_string(w.lo()) + ", " + std::to_string(w.hi()) + "]");
  }
}

long double ln(u64 x) { return std::log(static_cast<long double>(x)); }

// Sum of 1/a over X∩[lo, hi].
long double harmonic_over(const IntervalSet& x_set, u64 lo, u64 hi) {
  CompensatedSum acc;
  const auto clipped = x_set.clip(lo, hi);
  for (const auto& part : clipped.components()) acc.add(harmonic_range(part.lo, part.hi));
  return acc.value();
}

std::vector<LocalDensity> local_density(const Window& w, const RatioCut& cut, const IntervalSet& x_set, u64 x,
                                        std::span<const double> r_grid, bool right) {
  if (!w.contains(x)) throw DomainError("x = " + std::to_string(x) + " lies outside the window");
  std::vector<LocalDensity> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    if (!(r > cut.value())) throw ValidationError("every r in the grid must exceed rho");
    const long double reach = right ? std::floor(static_cast<long double>(x) * r)
                                    : std::floor(static_cast<long double>(x) / r);
    if (right ? reach > static_cast<long double>(w.hi()) : reach < static_cast<long double>(w.lo())) {
      throw DomainError("the local window for r = " + std::to_string(r) + " leaves the window");
    }
    const u64 end = static_cast<u64>(reach);
    const long double sum = right ? harmonic_over(x_set, x, end) : harmonic_over(x_set, end, x);
    out.push_back({r, static_cast<double>(sum / std::log(static_cast<long double>(r)))});
  }
  return out;
}

}  // namespace

RatioCut::RatioCut(u64 num, u64 den) : num_(num), den_(den) {
  if (den_ == 0) throw ValidationError("ratio denominator must be positive");
  if (num_ < den_) throw ValidationError("ratio tolerance must be >= 1");
  const u64 g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

RatioCut RatioCut::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return RatioCut(parse_digits(text.substr(0, slash), text), parse_digits(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 9) throw ValidationError("ratio '" + std::string(text) + "' has too many decimals");
    u64 scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const u64 whole = dot == 0 ? 0 : parse_digits(text.substr(0, dot), text);
    const u64 part = frac.empty() ? 0 : parse_digits(frac, text);
    auto num = checked_mul(whole, scale);
    if (!num || !checked_add(*num, part)) throw ValidationError("ratio '" + std::string(text) + "' is too large");
    return RatioCut(*num + part, scale);
  }
  return RatioCut(parse_digits(text, text));
}

long double RatioCut::log() const { return ln(num_) - ln(den_); }

RatioCut RatioCut::squared() const {
  auto num = checked_mul(num_, num_);
  auto den = checked_mul(den_, den_);
  if (!num || !den) throw CapacityError("squared ratio is not representable");
  return RatioCut(*num, *den);
}

std::string RatioCut::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

WindowMeasureReport nu(const Window& w, const IntervalSet& s) {
  if (s.empty()) return {w, 0, 0};
  require_inside(w, s.min(), s.max());
  CompensatedSum acc;
  for (const auto& part : s.components()) acc.add(harmonic_range(part.lo, part.hi));
  const long double log_n = w.log_span();
  const long double slack = kRangeSumSlack * static_cast<long double>(s.component_count());
  return {w, static_cast<double>(acc.value() / log_n), static_cast<double>(slack / log_n)};
}

WindowMeasureReport nu(const Window& w, std::span<const u64> elements) {
  if (elements.empty()) return {w, 0, 0};
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (elements[i] <= elements[i - 1]) throw ValidationError("elements must be strictly increasing");
  }
  require_inside(w, elements.front(), elements.back());
  FixedSum sum;
  for (u64 a : elements) sum.add(reciprocal_weight(a));
  const long double log_n = w.log_span();
  // Each weight is floor(2^64/a): below the true value by under 2^-64.
  const long double err = std::ldexp(static_cast<long double>(elements.size()), -64);
  return {w, static_cast<double>(sum.value() / log_n), static_cast<double>(err / log_n)};
}

double interval_measure(const Window& w, u64 a, u64 b) {
  if (a > b) throw DomainError("interval_measure requires a <= b");
  require_inside(w, a, b);
  return static_cast<double>((ln(b) - ln(a)) / w.log_span());
}

BigEstimate big_estimate(const Window& w, const IntervalSet& s, double ratio_floor) {
  if (s.empty()) return {};
  require_inside(w, s.min(), s.max());
  if (!classify(s, w.hi(), ratio_floor).big) throw DomainError("big_estimate requires big components");
  CompensatedSum value;
  CompensatedSum tol;
  for (const auto& part : s.components()) {
    value.add(ln(part.hi) - ln(part.lo));
    // ln(b+1) - ln(a) <= H_b - H_{a-1} <= ln(b) - ln(a-1).
    tol.add(part.lo == 1 ? 1.0L : -std::log1p(-1.0L / static_cast<long double>(part.lo)));
    tol.add(kRangeSumSlack);
  }
  const long double log_n = w.log_span();
  return {static_cast<double>(value.value() / log_n), static_cast<double>(tol.value() / log_n)};
}

double phi(const Window& w, u64 a) {
  require_inside(w, a, a);
  return static_cast<double>((ln(a) - ln(w.k())) / w.log_span());
}

Interval monad_of(const Window& w, const RatioCut& cut, u64 a) {
  require_inside(w, a, a);
  const u128 scaled = u128{a} * cut.den();
  const u128 lo = scaled / cut.num() + (scaled % cut.num() != 0 ? 1 : 0);
  const u128 hi = u128{a} * cut.num() / cut.den();
  return {static_cast<u64>(std::max<u128>(lo, w.lo())), static_cast<u64>(std::min<u128>(hi, w.hi()))};
}

bool equivalent(const RatioCut& cut, u64 a, u64 b) {
  const u64 lo = std::min(a, b);
  const u64 hi = std::max(a, b);
  return u128{hi} * cut.den() <= u128{lo} * cut.num();
}

TransportReport scale_check(const Window& w, const IntervalSet& s, u64 scale, double ratio_floor) {
  if (scale == 0) throw ValidationError("scale must be positive");
  if (s.empty()) return {};
  if (!checked_mul(w.hi(), scale)) throw CapacityError("s * N * k overflows 64 bits");
  require_inside(w, s.min(), s.max());
  if (!classify(s, w.hi(), ratio_floor).big) throw DomainError("scale_check requires big components");
  std::vector<Interval> image;
  for (const auto& part : s.components()) image.push_back({part.lo * scale, part.hi * scale});
  const Window target(w.k() * scale, w.span());
  TransportReport out;
  out.nu_source = nu(w, s).value;
  out.nu_image = nu(target, IntervalSet::from_components(std::move(image))).value;
  out.discrepancy = std::fabs(out.nu_source - out.nu_image);
  out.bound = static_cast<double>(3.0L * static_cast<long double>(s.component_count()) /
                                      (static_cast<long double>(s.min()) * w.log_span()) +
                                  1e-6L);
  return out;
}

u64 invert_point(u64 n, u64 u) {
  if (u < 1 || u > n) throw DomainError("invert_point requires 1 <= u <= N");
  return n / u;
}

TransportReport inversion_check(const Window& w, const IntervalSet& s, u64 margin, double ratio_floor) {
  if (w.k() != 1) throw DomainError("inversion_check requires k = 1");
  if (margin < 1) throw ValidationError("margin must be >= 1");
  if (s.empty()) return {};
  const u64 n = w.span();
  const auto cls = classify(s, n, ratio_floor);
  if (!cls.big || !cls.separated) throw DomainError("inversion_check requires big, separated components");
  if (u128{s.max()} * margin > n) throw DomainError("inversion_check requires every b_i <= N/margin");
  TransportReport out;
  out.nu_source = nu(w, s).value;
  out.nu_image = nu(w, invert_intervals(s, n)).value;
  out.discrepancy = std::fabs(out.nu_source - out.nu_image);
  CompensatedSum bound;
  for (const auto& part : s.components()) {
    bound.add(-std::log1p(-static_cast<long double>(part.hi) / static_cast<long double>(n)));
    bound.add(2.0L / static_cast<long double>(n / part.hi));
    bound.add(2.0L / static_cast<long double>(part.lo));
  }
  out.bound = static_cast<double>(bound.value() / w.log_span() + 1e-4L);
  return out;
}

std::vector<LocalDensity> density_plus(const Window& w, const RatioCut& cut, const IntervalSet& x_set, u64 x,
                                       std::span<const double> r_grid) {
  return local_density(w, cut, x_set, x, r_grid, true);
}

std::vector<LocalDensity> density_minus(const Window& w, const RatioCut& cut, const IntervalSet& x_set, u64 x,
                                        std::span<const double> r_grid) {
  return local_density(w, cut, x_set, x, r_grid, false);
}

double density_estimate(std::span<const LocalDensity> local) {
  if (local.empty()) throw ValidationError("density estimate needs a nonempty grid");
  double best = local.front().value;
  for (const auto& l : local) best = std::min(best, l.value);
  return best;
}

u64 root_window_end(u64 k, u64 nroot, unsigned m) {
  if (m < 1) throw ValidationError("m must be >= 1");
  if (k < 1) throw ValidationError("k must be >= 1");
  auto base = checked_add(iroot_ceil(k, m), nroot);
  auto end = base ? checked_pow(*base, m) : std::nullopt;
  if (!end) throw CapacityError("root window end is not representable in 64 bits");
  return *end;
}

double nu_m(u64 nroot, unsigned m, std::span<const u64> elements, u64 k) {
  if (nroot < 1) throw ValidationError("Nroot must be >= 1");
  if (elements.empty()) return 0;
  const u64 end = root_window_end(k, nroot, m);
  if (elements.front() < k || elements.back() > end) throw DomainError("elements leave the root window");
  FixedSum sum;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i > 0 && elements[i] <= elements[i - 1]) throw ValidationError("elements must be strictly increasing");
    sum.add(root_weight(elements[i], m));
  }
  return static_cast<double>(sum.value() / (static_cast<long double>(m) * nroot));
}

double nu_m(u64 nroot, unsigned m, const IntervalSet& s, u64 k) {
  if (nroot < 1) throw ValidationError("Nroot must be >= 1");
  if (s.empty()) return 0;
  const u64 end = root_window_end(k, nroot, m);
  if (s.min() < k || s.max() > end) throw DomainError("interval set leaves the root window");
  const long double exponent = static_cast<long double>(m - 1) / static_cast<long double>(m);
  CompensatedSum acc;
  for (const auto& part : s.components()) acc.add(power_sum_range(part.lo, part.hi, exponent));
  return static_cast<double>(acc.value() / (static_cast<long double>(m) * nroot));
}

double nu_m_interval_form(u64 nroot, unsigned m, u64 a, u64 b) {
  if (nroot < 1 || m < 1) throw ValidationError("nu_m_interval_form requires Nroot >= 1 and m >= 1");
  const long double inv = 1.0L / static_cast<long double>(m);
  return static_cast<double>((std::pow(static_cast<long double>(b), inv) - std::pow(static_cast<long double>(a), inv)) /
                             static_cast<long double>(nroot));
}

u64 root_shift(u64 a, u64 c, unsigned m) {
  if (m < 1) throw ValidationError("m must be >= 1");
  auto base = checked_add(iroot_ceil(a, m), c);
  auto out = base ? checked_pow(*base, m) : std::nullopt;
  if (!out) throw CapacityError("root_shift result is not representable in 64 bits");
  return *out;
}

}  // namespace densitylab
