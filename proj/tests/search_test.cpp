#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadstrata/oracle.hpp"
#include "quadstrata/search.hpp"

#include "helpers.hpp"

#include <numeric>

using namespace quadstrata;
using quadstrata::testing::make_config;
using quadstrata::testing::make_sig;

TEST_CASE("normal-form search: contract examples") {
  auto sig = make_sig(0, {1, 1}, {}, {}, 3);
  CHECK(!enumerate_normal_forms(sig, {1, 2, 4}).empty());
  CHECK(enumerate_normal_forms(sig, {1, 1, 2}).empty());
  CHECK(enumerate_normal_forms(make_sig(0, {-1, 1}, {}, {}, 2), {1, 1}).empty());
  CHECK_THROWS_AS(enumerate_normal_forms(sig, {1, 2, 4}, 2), Error);         // budget
  CHECK_THROWS_AS(enumerate_normal_forms(sig, {1, 2}), Error);               // length
  CHECK_THROWS_AS(enumerate_normal_forms(sig, {1, 2, 0}), Error);            // positivity
  CHECK_THROWS_AS(enumerate_normal_forms(make_sig(0, {2, 1, 1}, {}, {}, 4), {1, 1, 1, 1}), Error);
}

TEST_CASE("every emitted witness is verified against the stratum") {
  auto sig = make_sig(0, {1, 3}, {}, {}, 4);
  for (const auto& witness : enumerate_normal_forms(sig, {1, 2, 3, 4})) {
    CHECK(witness.invariants.genus == 0);
    CHECK(witness.invariants.primitive);
    CHECK(witness.invariants.connected);
    auto zeros = witness.invariants.zero_orders;
    std::sort(zeros.begin(), zeros.end());
    CHECK(zeros == std::vector<int>{1, 3});
    std::vector<GaussianRational> expected = {gr(1), gr(4), gr(9), gr(16)};
    std::sort(expected.begin(), expected.end());
    CHECK(witness.invariants.residue_multiset() == expected);
  }
}

TEST_CASE("half-integer saddle lengths") {
  // Odd root sum: cycle lengths are half-integers, tree lengths integers.
  auto sig = make_sig(0, {1, 1}, {}, {}, 3);
  auto odd = enumerate_normal_forms(sig, {1, 2, 4});
  REQUIRE(!odd.empty());
  for (const auto& witness : odd) {
    check_half_integer_lengths(witness, {1, 2, 4});
    for (int e = 0; e < witness.plan.edge_count; ++e) {
      if (witness.on_cycle[e])
        CHECK(denominator(witness.lengths[e]) == 2);
      else
        CHECK(denominator(witness.lengths[e]) == 1);
    }
  }

  // Even root sum: all integer lengths.
  auto even = enumerate_normal_forms(make_sig(0, {3, 3}, {}, {}, 5), {1, 2, 3, 4, 6});
  REQUIRE(!even.empty());
  for (const auto& witness : even) {
    check_half_integer_lengths(witness, {1, 2, 3, 4, 6});
    for (const auto& L : witness.lengths) CHECK(denominator(L) == 1);
  }

  CHECK_THROWS_AS(check_half_integer_lengths(odd[0], {2, 4, 8}), Error);  // not coprime
}

TEST_CASE("cycle detection on plans") {
  CylinderChainPlan plan;
  plan.edge_count = 3;
  plan.slots = {{0}, {1}, {0, 2, 1, 2}};
  plan.orientation = {1, 1, 1};
  auto cycle = plan_cycle_edges(plan);
  CHECK(cycle == std::vector<bool>{false, false, true});
  validate_plan(plan);
  CylinderChainPlan bad = plan;
  bad.slots[0].push_back(2);
  CHECK_THROWS_AS(validate_plan(bad), Error);
}

TEST_CASE("integer witnesses respect the arithmetic length bounds") {
  // Every witness with coprime integer roots has root sum >= a2+2 when the
  // sum is odd and >= a1+a2+4 when even.
  for (int s = 2; s <= 4; ++s) {
    std::vector<long> roots(s, 1);
    while (true) {
      long sum = std::accumulate(roots.begin(), roots.end(), 0L);
      long g = 0;
      for (long r : roots) g = std::gcd(g, r);
      if (sum <= 9 && g == 1 && std::is_sorted(roots.begin(), roots.end())) {
        for (int a1 = -1; a1 <= (2 * s - 4) / 2; a1 += 2) {
          int a2 = 2 * s - 4 - a1;
          if (a2 < a1 || a2 < -1) continue;
          auto sig = make_sig(0, {a1, a2}, {}, {}, s);
          if (!enumerate_normal_forms(sig, roots, 4, true).empty()) {
            if (sum % 2 != 0)
              CHECK(sum >= a2 + 2);
            else
              CHECK(sum >= a1 + a2 + 4);
          }
        }
      }
      int i = s - 1;
      while (i >= 0 && roots[i] == 9) roots[i--] = 1;
      if (i < 0) break;
      ++roots[i];
    }
  }
}

TEST_CASE("oracle agreement on a small sweep") {
  // All strata (a1,a2;(-2^s)) with s <= 4 and sorted coprime roots of sum <= 8.
  for (int s = 1; s <= 4; ++s) {
    std::vector<std::pair<int, int>> strata;
    for (int a1 = -1; a1 <= 2 * s - 4 + 1; a1 += 2) {
      int a2 = 2 * s - 4 - a1;
      if (a2 < a1 || a2 < -1) continue;
      strata.push_back({a1, a2});
    }
    std::vector<std::vector<long>> configs;
    std::vector<long> roots(s, 1);
    while (true) {
      long sum = std::accumulate(roots.begin(), roots.end(), 0L);
      if (sum <= 8) {
        bool sorted = std::is_sorted(roots.begin(), roots.end());
        long g = 0;
        for (long r : roots) g = std::gcd(g, r);
        if (sorted && g == 1) configs.push_back(roots);
      }
      int i = s - 1;
      while (i >= 0 && roots[i] == 8) roots[i--] = 1;
      if (i < 0) break;
      ++roots[i];
    }
    for (auto [a1, a2] : strata) {
      auto sig = make_sig(0, {a1, a2}, {}, {}, s);
      for (const auto& config : configs) {
        bool found = !enumerate_normal_forms(sig, config, 5, true).empty();
        RootedResidueConfig rooted;
        for (long r : config) rooted.double_pole_roots.push_back(gr((int)r));
        bool realizable = decide(sig, rooted).realizable();
        INFO("stratum (", a1, ",", a2, ";(-2^", s, ")) roots sum ",
             std::accumulate(config.begin(), config.end(), 0L));
        CHECK(found == realizable);
      }
    }
  }
}
