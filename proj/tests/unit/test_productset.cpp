#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "densitylab/errors.hpp"
#include "densitylab/productset.hpp"
#include "oracles.hpp"

using namespace densitylab;

namespace {

std::vector<u64> brute_products(const std::vector<u64>& a, const std::vector<u64>& b, u64 lo, u64 hi) {
  std::set<u64> out;
  for (u64 x : a) {
    for (u64 y : b) {
      if (x * y >= lo && x * y <= hi) out.insert(x * y);
    }
  }
  return {out.begin(), out.end()};
}

// m at one x from the definition: prepend x when the first product exceeds it.
std::optional<u64> brute_m(const std::vector<u64>& all_products, u64 x, u64 n) {
  std::vector<u64> window;
  for (u64 p : all_products) {
    if (p >= x && p <= x * n) window.push_back(p);
  }
  if (window.empty()) return std::nullopt;
  if (window.front() > x) window.insert(window.begin(), x);
  return max_gap_ratio(window);
}

}  // namespace

TEST_SUITE("productset") {
  TEST_CASE("products_in examples") {
    const auto ab = SetSpec::explicit_list({2, 3});
    const auto cd = SetSpec::explicit_list({5, 7});
    CHECK(products_in(ab, cd, 1, 100) == std::vector<u64>{10, 14, 15, 21});
    std::vector<u64> run(11);
    for (u64 i = 0; i < 11; ++i) run[i] = 10 + i;
    CHECK(products_in(SetSpec::full(), SetSpec::full(), 10, 20) == run);
    CHECK(products_in(SetSpec::explicit_list({2}), SetSpec::explicit_list({2}), 5, 100).empty());
    CHECK(products_in(SetSpec::primes(), SetSpec::primes(), 1, 10) == std::vector<u64>{4, 6, 9, 10});
    CHECK_THROWS_AS(products_in(SetSpec::full(), SetSpec::full(), 1, 2'000'000'000), CapacityError);
    CHECK_THROWS_AS(products_in(SetSpec::full(), SetSpec::full(), 20, 10), ValidationError);
  }

  TEST_CASE("products_in agrees with a double loop") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = oracle::random_set(rng, 5000, 1 + rng() % 1000);
      const auto b = oracle::random_set(rng, 5000, 1 + rng() % 1000);
      const u64 lo = rng() % 20'000 + 1;
      const u64 hi = lo + rng() % 200'000;
      const auto want = brute_products(a, b, lo, hi);
      CHECK(products_in(SetSpec::explicit_list(a), SetSpec::explicit_list(b), lo, hi) == want);
      // The bitmap path, reached through an equivalent interval spec.
      std::vector<Interval> parts;
      for (u64 x : a) parts.push_back({x, x});
      CHECK(products_in(SetSpec::interval_union(IntervalSet::from_components(parts)), SetSpec::explicit_list(b), lo, hi) == want);
    }
    const auto sf = materialize(SetSpec::squarefree(), 1, 3000);
    const auto pr = materialize(SetSpec::primes(), 1, 3000);
    CHECK(products_in(SetSpec::squarefree(), SetSpec::primes(), 1000, 3000) == brute_products(sf, pr, 1000, 3000));
  }

  TEST_CASE("max_gap_ratio") {
    CHECK(max_gap_ratio(std::vector<u64>{10, 14, 15, 21}) == 2);
    CHECK(max_gap_ratio(std::vector<u64>{5}) == 1);
    CHECK(max_gap_ratio(std::vector<u64>{3, 9, 10}) == 3);
    CHECK_THROWS_AS(max_gap_ratio(std::vector<u64>{}), DomainError);
  }

  TEST_CASE("gap_witness examples") {
    const auto full = gap_witness(SetSpec::full(), SetSpec::full(), 16, 1'000'000);
    REQUIRE(full);
    CHECK(full->m == 2);
    CHECK(full->x == 1);
    const auto sf = gap_witness(SetSpec::squarefree(), SetSpec::squarefree(), 16, 1'000'000);
    REQUIRE(sf);
    CHECK(sf->m == 2);
    const auto ten = SetSpec::explicit_list({10});
    const auto single = gap_witness(ten, ten, 4, 10'000);
    REQUIRE(single);
    CHECK(single->m == 1);
    CHECK(single->x == 100);
    CHECK(single->lo == 100);
    CHECK(single->hi == 400);
    CHECK(single->products_examined == 1);
    CHECK_FALSE(gap_witness(SetSpec::empty(), SetSpec::full(), 4, 10'000));
    CHECK_THROWS_AS(gap_witness(ten, ten, 1, 10'000), ValidationError);
  }

  TEST_CASE("exact scan agrees with every-x evaluation") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = oracle::random_set(rng, 300, 1 + rng() % 30);
      const auto b = oracle::random_set(rng, 300, 1 + rng() % 30);
      const u64 n = 2 + rng() % 6;
      const u64 horizon = 1000 + rng() % 4000;
      const auto all = brute_products(a, b, 1, horizon);
      std::optional<std::pair<u64, u64>> want;  // (m, x)
      for (u64 x = 1; x <= horizon / n; ++x) {
        const auto m = brute_m(all, x, n);
        if (m && (!want || *m < want->first)) want = std::pair{*m, x};
      }
      const auto sa = SetSpec::explicit_list(a);
      const auto sb = SetSpec::explicit_list(b);
      const auto got = gap_witness(sa, sb, n, horizon);
      REQUIRE(got.has_value() == want.has_value());
      if (!got) continue;
      CHECK(std::pair{got->m, got->x} == *want);
      const auto window = products_in(sa, sb, got->lo, got->hi);
      CHECK(got->products_examined == window.size());
      CHECK(got->last_product == window.back());
      CHECK_FALSE(gap_violation(*got, window));
      // The grid only visits some x, so it can never beat the exact scan.
      const auto grid = gap_witness(sa, sb, n, horizon, {1.1, GapScan::grid});
      REQUIRE(grid);
      CHECK(grid->m >= got->m);
      CHECK(brute_m(all, grid->x, n) == grid->m);
    }
  }

  TEST_CASE("gap reports are sound and monotone in n") {
    const auto sf = SetSpec::squarefree();
    for (u64 n : {4, 16, 64}) {
      const auto r = gap_witness(sf, sf, n, 1'000'000);
      REQUIRE(r);
      const auto window = products_in(sf, sf, r->lo, r->hi);
      CHECK(window.size() == r->products_examined);
      CHECK_FALSE(gap_violation(*r, window));
      CHECK(r->x * n <= r->hi);
    }
    std::mt19937_64 rng(53);
    const auto primes = SetSpec::primes();
    for (int trial = 0; trial < 200; ++trial) {
      const u64 x = 1 + rng() % 5000;
      const u64 n = 2 + rng() % 10;
      const auto small = products_in(primes, primes, x, x * n);
      const auto large = products_in(primes, primes, x, x * (n + 1 + rng() % 10));
      if (small.empty()) continue;
      auto closed = [&](std::vector<u64> w) {
        if (w.front() > x) w.insert(w.begin(), x);
        return max_gap_ratio(w);
      };
      CHECK(closed(small) <= closed(large));
    }
  }

  TEST_CASE("gap_violation detects holes") {
    const GapReport r{4, 100, 1, 1, 100, 400, 100};
    CHECK_FALSE(gap_violation(r, std::vector<u64>{100}));
    const GapReport wide{4, 10, 2, 2, 10, 40, 30};
    CHECK(gap_violation(wide, std::vector<u64>{10, 30}) == u64{11});
  }

  TEST_CASE("gap_grid") {
    const auto g = gap_grid(100, 1.1);
    CHECK(g.front() == 1);
    CHECK(g.back() == 100);
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
    CHECK(gap_grid(1, 1.1) == std::vector<u64>{1});
  }
}
