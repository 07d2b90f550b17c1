#include <doctest.h>

#include <algorithm>
#include <random>

#include "densitylab/errors.hpp"
#include "densitylab/progressions.hpp"
#include "oracles.hpp"

using namespace densitylab;

namespace {

using Pair = std::pair<u64, u64>;

bool any_member_between(const std::vector<u64>& set, u64 x, u64 n) {
  // Least member with a n > x, then test a < x n.
  const auto it = std::upper_bound(set.begin(), set.end(), x / n);
  return it != set.end() && *it * n > x && x * n > *it;
}

// Least (a, r) by a then r; terms a r^i with a r^(l-1) n <= horizon.
std::optional<Pair> brute_geo(const std::vector<u64>& set, u64 l, u64 n, u64 min_a, u64 min_r, u64 horizon) {
  for (u64 a = min_a + 1; a * n <= horizon; ++a) {
    for (u64 r = min_r + 1;; ++r) {
      u64 top = a;
      bool fits = true;
      for (u64 i = 1; i < l; ++i) {
        top *= r;
        if (top * n > horizon) fits = false;
      }
      if (!fits || top * n > horizon) break;
      bool ok = true;
      u64 x = a;
      for (u64 i = 0; i < l && ok; ++i, x *= r) ok = any_member_between(set, x, n);
      if (ok) return Pair{a, r};
      if (l == 1) break;
    }
  }
  return std::nullopt;
}

std::optional<Pair> brute_power_ap(const std::vector<u64>& set, unsigned m, u64 l, u64 n, u64 min_a, u64 min_d,
                                   u64 horizon) {
  for (u64 a = min_a + 1; a * n <= horizon; ++a) {
    u64 s = 1;
    while (*checked_pow(s, m) < a) ++s;
    for (u64 d = min_d + 1;; ++d) {
      const auto top = checked_pow(s + (l - 1) * d, m);
      if (!top || *top * n > horizon) break;
      bool ok = true;
      for (u64 i = 0; i < l && ok; ++i) ok = any_member_between(set, *checked_pow(s + i * d, m), n);
      if (ok) return Pair{a, d};
      if (l == 1) break;
    }
  }
  return std::nullopt;
}

std::optional<std::array<u64, 3>> brute_gp(const std::vector<u64>& set, u64 horizon) {
  for (u64 b : set) {
    if (b > horizon) break;
    for (u64 a : set) {
      if (a >= b) break;
      if ((b * b) % a == 0 && oracle::in(set, b * b / a)) return std::array<u64, 3>{a, b, b * b / a};
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("progressions") {
  TEST_CASE("n-approximation") {
    CHECK(is_n_approx(10, 15, 2));
    CHECK_FALSE(is_n_approx(10, 20, 2));
    CHECK(is_n_approx(7, 7, 2));
    CHECK_FALSE(is_n_approx(7, 7, 1));
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100'000; ++trial) {
      const u64 x = rng() % 10'000 + 1;
      const u64 a = rng() % 10'000 + 1;
      const u64 n = rng() % 20 + 1;
      REQUIRE(is_n_approx(x, a, n) == is_n_approx(a, x, n));
      if (is_n_approx(x, a, n)) REQUIRE(is_n_approx(x, a, n + 1 + rng() % 5));
    }
  }

  TEST_CASE("approx_subset examples") {
    const std::vector<u64> powers{11, 121, 1331};
    auto w = approx_subset(powers, SetSpec::full(), 2, 10'000);
    REQUIRE(w);
    CHECK(w->matches == std::vector<Pair>{{11, 11}, {121, 121}, {1331, 1331}});
    auto even = approx_subset(std::vector<u64>{7}, SetSpec::even(), 2, 100);
    REQUIRE(even);
    CHECK(even->matches.front() == Pair{7, 8});
    CHECK_FALSE(approx_subset(std::vector<u64>{7}, SetSpec::explicit_list({100}), 2, 1000));
    // 10 sits between 5 and 20: 10^2 = 5 * 20, the tie goes to 5.
    auto tie = approx_subset(std::vector<u64>{10}, SetSpec::explicit_list({5, 20}), 3, 1000);
    REQUIRE(tie);
    CHECK(tie->matches.front().second == 5);
    CHECK_THROWS_AS(approx_subset(std::vector<u64>{60}, SetSpec::full(), 2, 100), DomainError);
  }

  TEST_CASE("find_geo examples") {
    auto full = find_geo(SetSpec::full(), 3, 2, 10, 10, 1'000'000);
    REQUIRE(full);
    CHECK(full->a == 11);
    CHECK(full->step == 11);
    auto sf = find_geo(SetSpec::squarefree(), 3, 2, 10, 10, 1'000'000);
    REQUIRE(sf);
    const auto terms = *geometric_terms(sf->a, sf->step, 3);
    CHECK(approx_subset(terms, SetSpec::squarefree(), 2, 1'000'000)->matches == sf->matches);
    CHECK_FALSE(find_geo(SetSpec::empty(), 3, 2, 10, 10, 1'000'000));
    CHECK_THROWS_AS(find_geo(SetSpec::full(), 3, 2, 100, 100, 1'000'000), DomainError);
  }

  TEST_CASE("sparse block set blocks approximate progressions") {
    const auto ex2 = SetSpec::example2(2, 4);
    for (u64 n = 1; n <= 4; ++n) {
      const u64 m = n * n * n * 2;
      CHECK_FALSE(find_geo(ex2, 3, n, m, m, 100'000'000));
    }
    // Below the blocking threshold a progression does exist.
    CHECK(find_geo(ex2, 3, 2, 1, 1, 100'000'000));
  }

  TEST_CASE("find_geo agrees with a brute-force search") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
      const u64 horizon = 4000 + rng() % 6000;
      const auto set = oracle::random_set(rng, horizon, 20 + rng() % 400);
      const u64 l = 1 + rng() % 3;
      const u64 n = 1 + rng() % 3;
      const u64 min_a = rng() % 5;
      const u64 min_r = 1 + rng() % 4;
      const auto got = find_geo(SetSpec::explicit_list(set), l, n, min_a, min_r, horizon);
      const auto want = brute_geo(set, l, n, min_a, min_r, horizon);
      REQUIRE(got.has_value() == want.has_value());
      if (got) {
        CHECK(Pair{got->a, got->step} == *want);
        for (const auto& [x, a] : got->matches) CHECK(is_n_approx(x, a, n));
      }
    }
  }

  TEST_CASE("find_power_ap") {
    auto full = find_power_ap(SetSpec::full(), 2, 4, 2, 10, 5, 1'000'000);
    REQUIRE(full);
    CHECK(full->a == 11);
    CHECK(full->step == 6);
    CHECK(full->matches == std::vector<Pair>{{16, 16}, {100, 100}, {256, 256}, {484, 484}});
    CHECK_FALSE(find_power_ap(SetSpec::empty(), 2, 4, 2, 10, 5, 1'000'000));
    auto sf = find_power_ap(SetSpec::squarefree(), 2, 3, 3, 10, 2, 1'000'000);
    REQUIRE(sf);
    const auto want = brute_power_ap(materialize(SetSpec::squarefree(), 1, 10'000), 2, 3, 3, 10, 2, 10'000);
    REQUIRE(want);
    CHECK(Pair{sf->a, sf->step} == *want);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
      const u64 horizon = 3000 + rng() % 3000;
      const auto set = oracle::random_set(rng, horizon, 30 + rng() % 300);
      const unsigned m = 1 + static_cast<unsigned>(rng() % 3);
      const u64 l = 1 + rng() % 3;
      const u64 n = 1 + rng() % 3;
      const auto got = find_power_ap(SetSpec::explicit_list(set), m, l, n, 1, 0, horizon);
      const auto brute = brute_power_ap(set, m, l, n, 1, 0, horizon);
      REQUIRE(got.has_value() == brute.has_value());
      if (got) CHECK(Pair{got->a, got->step} == *brute);
    }
  }

  TEST_CASE("gp_free certification") {
    CHECK(gp_free_certify(SetSpec::squarefree(), 10'000).gp_free);
    const auto full = gp_free_certify(SetSpec::full(), 100);
    CHECK_FALSE(full.gp_free);
    CHECK(*full.witness == std::array<u64, 3>{1, 2, 4});
    CHECK(gp_free_certify(SetSpec::explicit_list({2, 3, 5}), 10).gp_free);
    CHECK_FALSE(gp_free_certify(SetSpec::explicit_list({4, 6, 9}), 10).gp_free);
    CHECK_THROWS_AS(gp_free_certify(SetSpec::full(), 2'000'000), CapacityError);
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 50; ++trial) {
      const auto set = oracle::random_set(rng, 3000, 10 + rng() % 150);
      const u64 horizon = 500 + rng() % 2500;
      const auto got = gp_free_certify(SetSpec::explicit_list(set), horizon);
      const auto want = brute_gp(set, horizon);
      REQUIRE(got.gp_free == !want.has_value());
      if (want) CHECK(*got.witness == *want);
    }
  }
}
