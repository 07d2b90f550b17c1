#include <doctest.h>

#include <cmath>
#include <random>

#include "densitylab/errors.hpp"
#include "densitylab/monad.hpp"

using namespace densitylab;

namespace {

constexpr u64 kTera = 1'000'000'000'000ULL;

// Reference values from tests/oracles/monad_oracles.py (mpmath, 40 digits).
constexpr double kNu10To100 = 0.17070735488033094;
constexpr double kNuFullWindow = 1.0000361972748837;
constexpr double kNuHalfWindow = 0.50001809863744184;
constexpr double kNu1e3To1e4 = 0.083353241482861494;
constexpr double kNu1e8To1e9 = 0.083333333532384971;
constexpr double kScaleSource = 0.25001811671494663;
constexpr double kScaleImage = 0.25000001811370203;
constexpr double kScale7Source = 0.33704889783445181;
constexpr double kScale7Image = 0.33385675159130817;
constexpr double kNuM2 = 0.90000275002081250;

IntervalSet iv(std::vector<Interval> parts) { return IntervalSet::from_components(std::move(parts)); }

}  // namespace

TEST_SUITE("monad") {
  TEST_CASE("ratio cut parsing") {
    CHECK(RatioCut::parse("10") == RatioCut(10));
    CHECK(RatioCut::parse("2.5") == RatioCut(5, 2));
    CHECK(RatioCut::parse("6/4") == RatioCut(3, 2));
    CHECK(RatioCut(5, 2).squared() == RatioCut(25, 4));
    CHECK_THROWS_AS(RatioCut::parse("0.5"), ValidationError);
    CHECK_THROWS_AS(RatioCut::parse("abc"), ValidationError);
    CHECK_THROWS_AS(RatioCut::parse("1/0"), ValidationError);
  }

  TEST_CASE("nu examples") {
    const Window big(1000, 1'000'000);
    const auto full = nu(big, iv({{1000, 1'000'000'000}}));
    CHECK(full.value == doctest::Approx(kNuFullWindow).epsilon(1e-13));
    CHECK(full.value >= 1.0);
    CHECK(full.value <= 1.0 + 5.0 / std::log(1e6));
    CHECK(nu(big, IntervalSet{}).value == 0.0);
    const Window small(1, 1'000'000);
    CHECK(nu(small, iv({{10, 100}})).value == doctest::Approx(kNu10To100).epsilon(1e-13));
    std::vector<u64> elems;
    for (u64 x = 10; x <= 100; ++x) elems.push_back(x);
    CHECK(nu(small, elems).value == doctest::Approx(kNu10To100).epsilon(1e-13));
    CHECK(nu(Window(1000, kTera), iv({{1000, 1'000'000'000}})).value == doctest::Approx(kNuHalfWindow).epsilon(1e-13));
    CHECK(nu(Window(1, kTera), iv({{1000, 10'000}})).value == doctest::Approx(kNu1e3To1e4).epsilon(1e-13));
    CHECK(nu(Window(1, kTera), iv({{100'000'000, 1'000'000'000}})).value ==
          doctest::Approx(kNu1e8To1e9).epsilon(1e-13));
    CHECK_THROWS_AS(nu(small, iv({{5, 2'000'000}})), DomainError);
    CHECK_THROWS_AS(nu(big, iv({{999, 2000}})), DomainError);
  }

  TEST_CASE("interval measure and phi") {
    const Window w(1000, kTera);
    CHECK(interval_measure(w, 1000, 1'000'000'000) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(interval_measure(w, 5000, 5000) == 0.0);
    CHECK(interval_measure(Window(1, 1'000'000), 10, 100) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    const Window w6(1, 1'000'000);
    CHECK(phi(w6, 1) == 0.0);
    CHECK(phi(w6, 1'000'000) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi(w6, 1000) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(phi(w6, 1'000'001), DomainError);
  }

  TEST_CASE("big estimate examples") {
    const Window w(1, kTera);
    const auto one = big_estimate(w, iv({{1000, 10'000}}));
    CHECK(one.value == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(std::fabs(one.value - nu(w, iv({{1000, 10'000}})).value) <= 1e-4);
    CHECK(std::fabs(one.value - nu(w, iv({{1000, 10'000}})).value) <= one.tolerance);
    CHECK(big_estimate(Window(7, 1000), iv({{7, 7000}})).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(big_estimate(w, iv({{100, 1000}, {100'000, 1'000'000}})).value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK_THROWS_AS(big_estimate(w, iv({{1000, 2000}})), DomainError);
  }

  TEST_CASE("monad and equivalence examples") {
    CHECK(monad_of(Window(1, kTera), RatioCut(10), 10'000) == Interval{1000, 100'000});
    CHECK(monad_of(Window(1, kTera), RatioCut(1), 777) == Interval{777, 777});
    CHECK(monad_of(Window(1, 1'000'000), RatioCut(10), 2) == Interval{1, 20});
    CHECK(monad_of(Window(1, 1'000'000), RatioCut(10), 999'999) == Interval{100'000, 1'000'000});
    CHECK(equivalent(RatioCut(10), 50, 400));
    CHECK_FALSE(equivalent(RatioCut(10), 50, 5000));
    CHECK(equivalent(RatioCut(10), 50, 500));
    CHECK(equivalent(RatioCut(3, 2), 12345, 12345));
  }

  TEST_CASE("scale check examples") {
    const auto r = scale_check(Window(1, kTera), iv({{1000, 1'000'000}}), 1000);
    CHECK(r.nu_source == doctest::Approx(kScaleSource).epsilon(1e-13));
    CHECK(r.nu_image == doctest::Approx(kScaleImage).epsilon(1e-13));
    CHECK(r.discrepancy < 1e-4);
    CHECK(scale_check(Window(1, kTera), iv({{1000, 1'000'000}}), 1).discrepancy == 0.0);
    const auto seven = scale_check(Window(1, 1'000'000), iv({{10, 1000}}), 7);
    CHECK(seven.nu_source == doctest::Approx(kScale7Source).epsilon(1e-13));
    CHECK(seven.nu_image == doctest::Approx(kScale7Image).epsilon(1e-13));
    CHECK(seven.discrepancy <= seven.bound);
    CHECK_THROWS_AS(scale_check(Window(1, kTera), iv({{1000, 1'000'000}}), 100'000'000), CapacityError);
  }

  TEST_CASE("inversion examples") {
    CHECK(invert_point(100, 7) == 14);
    CHECK(invert_point(100, 14) == 7);
    CHECK(invert_point(kTera, 1) == kTera);
    CHECK_THROWS_AS(invert_point(100, 101), DomainError);
    const Window w(1, kTera);
    const auto r = inversion_check(w, iv({{1000, 10'000}}));
    CHECK(r.nu_source == doctest::Approx(1.0 / 12.0).epsilon(1e-3));
    CHECK(r.nu_image == doctest::Approx(kNu1e8To1e9).epsilon(1e-13));
    CHECK(r.discrepancy < 1e-4);
    CHECK(inversion_check(w, iv({{10'000, 25'000}})).discrepancy < 1e-3);
    // Mirrored blocks [10^2,10^3] and [10^9,10^10] swap under u -> 10^12/u.
    const auto mirrored = iv({{100, 1000}, {1'000'000'000, 10'000'000'000ULL}});
    CHECK(invert_intervals(mirrored, kTera) == mirrored);
    const auto m = inversion_check(w, mirrored, 100);
    CHECK(m.nu_image == m.nu_source);
    CHECK_THROWS_AS(inversion_check(Window(2, kTera), iv({{1000, 10'000}})), DomainError);
    CHECK_THROWS_AS(inversion_check(w, iv({{1000, 10'000}, {15'000, 100'000}})), DomainError);
    CHECK_THROWS_AS(inversion_check(w, iv({{1000, 10'000'000'000ULL}})), DomainError);
  }

  TEST_CASE("density plus examples") {
    const Window w(1, kTera);
    const RatioCut cut(10);
    const std::vector<double> grid{20, 50, 100};
    const auto whole = iv({{1, kTera}});
    for (const auto& l : density_plus(w, cut, whole, 123'456, grid)) CHECK(l.value == doctest::Approx(1.0).epsilon(1e-3));
    const auto half = iv({{1, 1'000'000}});
    CHECK(density_estimate(density_plus(w, cut, half, 5000, grid)) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(density_estimate(density_plus(w, cut, half, 1'000'000, grid)) < 1e-5);
    CHECK(density_estimate(density_minus(w, cut, half, 1'000'000, grid)) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(density_plus(w, cut, half, 5000, std::vector<double>{5}), ValidationError);
    CHECK_THROWS_AS(density_plus(w, cut, half, kTera / 10, grid), DomainError);
  }

  TEST_CASE("root coordinates") {
    CHECK(root_shift(100, 5, 2) == 225);
    CHECK(root_shift(101, 0, 2) == 121);
    CHECK(root_shift(8, 1, 3) == 27);
    CHECK_THROWS_AS(root_shift(u64{1} << 62, 3'000'000'000, 2), CapacityError);
    CHECK(nu_m(1000, 2, iv({{10'000, 1'000'000}}), 10'000) == doctest::Approx(kNuM2).epsilon(1e-13));
    CHECK(nu_m(1000, 2, IntervalSet{}, 10'000) == 0.0);
    std::vector<u64> elems{3, 7, 8, 20};
    CHECK(nu_m(50, 1, elems, 1) == doctest::Approx(4.0 / 50.0).epsilon(1e-15));
    CHECK_THROWS_AS(nu_m(10, 2, iv({{100, 1000}}), 100), DomainError);
  }

  TEST_CASE("root interval form and shift invariance") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const unsigned m = 1 + static_cast<unsigned>(rng() % 3);
      const u64 a = std::uniform_int_distribution<u64>(10, 1'000'000)(rng);
      const u64 b = std::uniform_int_distribution<u64>(a, 4 * a)(rng);
      const u64 c = rng() % 50;
      const auto sa = iv({{a, b}});
      const u64 nroot = iroot_ceil(root_shift(b, c, m), m);
      const double v = nu_m(nroot, m, sa, 1);
      const double form = nu_m_interval_form(nroot, m, a, b);
      const double ra = std::pow(static_cast<double>(a), 1.0 / m);
      CHECK(std::fabs(v - form) <= (2 / ra + 2.0 / m) / nroot);
      const double shifted = nu_m(nroot, m, iv({{root_shift(a, c, m), root_shift(b, c, m)}}), 1);
      CHECK(std::fabs(v - shifted) <= (4 / ra + 4.0 / m) / nroot);
    }
  }

  TEST_CASE("normalization additivity and scale invariance") {
    std::mt19937_64 rng(32);
    for (u64 n : {u64{1'000'000}, u64{100'000'000}, kTera}) {
      for (u64 k : {1, 17, 1000}) {
        const Window w(k, n);
        const double v = nu(w, iv({{k, k * n}})).value;
        CHECK(v >= 1.0);
        CHECK(v <= 1.0 + 5.0 / std::log(static_cast<double>(n)));
      }
    }
    const Window w(1, kTera);
    for (int trial = 0; trial < 1000; ++trial) {
      const u64 a = std::uniform_int_distribution<u64>(1000, 1'000'000)(rng);
      const u64 b = std::uniform_int_distribution<u64>(a, 100 * a)(rng);
      const u64 c = std::uniform_int_distribution<u64>(1, 10'000)(rng);
      const double x = nu(w, iv({{a, b}})).value;
      const double y = nu(w, iv({{a * c, b * c}})).value;
      REQUIRE(std::fabs(x - y) <= 10.0 / (a * std::log(1e12)));
      const u64 mid = std::uniform_int_distribution<u64>(a, b)(rng);
      const double left = nu(w, iv({{a, mid}})).value;
      const double right = mid < b ? nu(w, iv({{mid + 1, b}})).value : 0.0;
      REQUIRE(std::fabs(left + right - x) <= 1e-13);
    }
  }

  TEST_CASE("phi order isomorphism and monads") {
    std::mt19937_64 rng(33);
    const Window w(1, kTera);
    const RatioCut cut(10);
    const double log_rho = std::log(10.0) / std::log(1e12);
    for (int trial = 0; trial < 10'000; ++trial) {
      u64 a = std::uniform_int_distribution<u64>(1, kTera)(rng);
      u64 b = trial % 2 ? std::uniform_int_distribution<u64>(1, kTera)(rng)
                        : std::uniform_int_distribution<u64>(a, std::min(kTera, a * 10))(rng);
      if (a > b) std::swap(a, b);
      if (a < b && !equivalent(cut, a, b)) REQUIRE(phi(w, a) < phi(w, b));
      if (equivalent(cut, a, b)) REQUIRE(std::fabs(phi(w, a) - phi(w, b)) <= log_rho + 1e-15);
      const auto mon = monad_of(w, cut, a);
      REQUIRE(mon.lo <= a);
      REQUIRE(a <= mon.hi);
      REQUIRE(equivalent(cut, a, mon.lo));
      REQUIRE(equivalent(cut, a, mon.hi));
      if (mon.lo > 1) REQUIRE_FALSE(equivalent(cut, a, mon.lo - 1));
      if (mon.hi < kTera) REQUIRE_FALSE(equivalent(cut, a, mon.hi + 1));
    }
  }

  TEST_CASE("equivalence is a congruence for the squared cut") {
    std::mt19937_64 rng(34);
    for (const auto& cut : {RatioCut(10), RatioCut(5, 2), RatioCut(1)}) {
      for (int trial = 0; trial < 20'000; ++trial) {
        const u64 a = std::uniform_int_distribution<u64>(1, 1'000'000)(rng);
        const u64 b = std::uniform_int_distribution<u64>(1, 1'000'000)(rng);
        const auto ma = monad_of(Window(1, 1'000'000'000), cut, a);
        const auto mb = monad_of(Window(1, 1'000'000'000), cut, b);
        const u64 a2 = std::uniform_int_distribution<u64>(ma.lo, ma.hi)(rng);
        const u64 b2 = std::uniform_int_distribution<u64>(mb.lo, mb.hi)(rng);
        REQUIRE(equivalent(cut.squared(), a * b, a2 * b2));
      }
    }
  }
}
