#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadstrata/constructors.hpp"
#include "quadstrata/oracle.hpp"
#include "quadstrata/surface_io.hpp"

#include "helpers.hpp"

#include <numeric>
#include <random>

using namespace quadstrata;
using quadstrata::testing::make_config;
using quadstrata::testing::make_sig;

TEST_CASE("construct_cc: explicit data") {
  // Q_0(1,3;(-2^4)) with the doubled edge v and one root edge before it.
  GaussianRational r1 = gr(1), r2 = gr(0, 1), r3 = gr(-1), r4 = gr(-1, -1);
  GaussianRational v = -((r1 + r2 + r3 + r4) / Rational(2));
  auto w = construct_cc(1, 3, {r1, r2, r3, r4}, 1, v);
  CHECK(verify(w.surface) == w.claimed);
  CHECK(w.claimed.zero_orders == std::vector<int>{3, 1});

  CHECK_THROWS_AS(construct_cc(1, 3, {r1, r2, r3, r4}, 2, v), Error);   // bad split
  CHECK_THROWS_AS(construct_cc(1, 3, {r1, r2, r3, r4}, 1, gr(5)), Error);  // closure
  // Collinear roots degenerate for every choice.
  CHECK_THROWS_AS(construct_cc(1, 1, {gr(1), gr(1), gr(-2)}, 1, gr(0)), Error);
}

TEST_CASE("plan_cc: obstructed configurations never assemble") {
  // Triangular (1,1,2): every split and sign choice must degenerate.
  auto sig = make_sig(0, {1, 1}, {}, {}, 3);
  CHECK(!plan_cc(sig, make_config({}, {gr(1), gr(1), gr(2)})).has_value());
  // Crosse on (2s'-1, 2s'+1): (1,3;(-2^4)) with residues (1,1,R,R).
  auto sig13 = make_sig(0, {1, 3}, {}, {}, 4);
  CHECK(!plan_cc(sig13, make_config({}, {gr(1), gr(1), gr(1, 1), gr(1, 1)})).has_value());
}

TEST_CASE("construct_genus0_odd_pole: contract examples") {
  auto sig = make_sig(0, {6}, {4}, {3, 3});
  auto w0 = construct_genus0_odd_pole(sig, make_config({gr(0)}));
  CHECK(verify(w0.surface) == w0.claimed);
  CHECK(w0.claimed.residues.at(0) == gr(0));

  auto w1 = construct_genus0_odd_pole(sig, make_config({gr(2)}));
  CHECK(verify(w1.surface) == w1.claimed);
  CHECK(w1.claimed.residues.at(0) == gr(4));

  // Single odd pole with no residues at all is outside this family.
  CHECK_THROWS_AS(construct_genus0_odd_pole(make_sig(0, {1}, {}, {5}), make_config({})), Error);
}

TEST_CASE("construct_cylinder_chain: explicit plans") {
  // (1,1;(-2^3)) roots (1,2,4): loop at the big cylinder plus two leaves.
  CylinderChainPlan plan;
  plan.edge_count = 3;
  plan.slots = {{0}, {1}, {0, 2, 1, 2}};
  plan.orientation = {1, 1, 1};
  auto w = construct_cylinder_chain(make_sig(0, {1, 1}, {}, {}, 3), {1, 2, 4}, plan);
  CHECK(verify(w.surface) == w.claimed);

  // Triangular roots (1,1,2) admit no positive solution in any plan shape:
  // the loop plan forces a zero length.
  CylinderChainPlan bad = plan;
  CHECK_THROWS_AS(construct_cylinder_chain(make_sig(0, {1, 1}, {}, {}, 3), {1, 1, 2}, bad), Error);

  CylinderChainPlan malformed;
  malformed.edge_count = 1;
  malformed.slots = {{0}};
  malformed.orientation = {1};
  CHECK_THROWS_AS(construct_cylinder_chain(make_sig(0, {1, 1}, {}, {}, 3), {1, 1, 2}, malformed),
                  Error);
}

TEST_CASE("construct: dispatcher obeys the oracle") {
  auto sig = make_sig(0, {1, 1}, {}, {}, 3);
  CHECK_THROWS_AS(construct(sig, make_config({}, {gr(1), gr(1), gr(2)})), Error);
  auto w = construct(sig, make_config({}, {gr(1), gr(2), gr(4)}));
  CHECK(w.recipe == "cylinder-chain");
  CHECK(verify(w.surface) == w.claimed);
}

TEST_CASE("construct_genus1_single_zero: contract examples") {
  // Q_1(4;-4) with nonzero residue, rotation number 1.
  auto w = construct_genus1_single_zero(make_sig(1, {4}, {4}), make_config({gr(2)}),
                                        ComponentSelector::rotation(1));
  CHECK(verify(w.surface) == w.claimed);
  CHECK(w.rotation_number == 1);
  CHECK(w.claimed.residues.at(0) == gr(4));

  // Q_1^3(6;-6) with zero residue: only the rotation-3 component carries it.
  auto w3 = construct_genus1_single_zero(make_sig(1, {6}, {6}), make_config({gr(0)}),
                                         ComponentSelector::rotation(3));
  CHECK(w3.rotation_number == 3);
  CHECK(verify(w3.surface) == w3.claimed);
  CHECK_THROWS_AS(construct_genus1_single_zero(make_sig(1, {6}, {6}), make_config({gr(0)}),
                                               ComponentSelector::rotation(1)),
                  Error);
}

TEST_CASE("genus-1 certificates recompute the rotation number") {
  struct Case {
    StratumSignature sig;
    RootedResidueConfig config;
    int rho;
  };
  std::vector<Case> cases = {
      {make_sig(1, {4}, {4}), make_config({gr(2)}), 1},
      {make_sig(1, {6}, {6}), make_config({gr(0)}), 3},
      {make_sig(1, {6}, {6}), make_config({gr(1, 1)}), 1},
      {make_sig(1, {10}, {10}), make_config({gr(0)}), 5},
      {make_sig(1, {10}, {10}), make_config({gr(2)}), 5},
      {make_sig(1, {2}, {}, {}, 1), make_config({}, {gr(1)}), 1},
      {make_sig(1, {12}, {4, 4, 4}), make_config({gr(0), gr(1), gr(1)}), 1},
  };
  for (const auto& c : cases) {
    auto w = construct_genus1_single_zero(c.sig, c.config, ComponentSelector::rotation(c.rho));
    CHECK(verify(w.surface) == w.claimed);
    REQUIRE(!w.alpha.empty());
    REQUIRE(!w.beta.empty());
    long ind_a = loop_index(w.surface, w.alpha);
    long ind_b = loop_index(w.surface, w.beta);
    CHECK(ind_a == w.alpha_index);
    CHECK(ind_b == w.beta_index);
    long g = std::gcd(std::labs(ind_a), std::labs(ind_b));
    for (int a : w.claimed.zero_orders) g = std::gcd(g, (long)std::abs(a));
    for (int o : w.claimed.pole_orders) g = std::gcd(g, (long)std::abs(o));
    CHECK(g == c.rho);
    CHECK(g % 2 == 1);  // primitive components have odd rotation number
  }
}

TEST_CASE("cc residues form the right multiset over random configurations") {
  std::mt19937 rng(20240810);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> stratum(0, 2);
  auto random_root = [&] {
    while (true) {
      GaussianRational z{Rational(coeff(rng)), Rational(coeff(rng))};
      if (!z.is_zero()) return z;
    }
  };
  int built = 0;
  for (int i = 0; i < 500 && built < 200; ++i) {
    int pick = stratum(rng);
    StratumSignature sig = pick == 0   ? make_sig(0, {1, 3}, {}, {}, 4)
                           : pick == 1 ? make_sig(0, {1, 1}, {}, {}, 3)
                                       : make_sig(0, {3, 3}, {}, {}, 5);
    RootedResidueConfig config;
    for (int k = 0; k < sig.s(); ++k) config.double_pole_roots.push_back(random_root());
    auto w = plan_cc(sig, config);
    if (!w) continue;
    ++built;
    LocalInvariants inv = verify(w->surface);
    CHECK(inv == w->claimed);
    std::vector<GaussianRational> expected;
    for (const auto& r : config.double_pole_roots) expected.push_back(r.square());
    std::sort(expected.begin(), expected.end());
    CHECK(inv.residue_multiset() == expected);
  }
  CHECK(built >= 120);
}

TEST_CASE("witness construction is deterministic") {
  auto sig = make_sig(0, {1, 3}, {}, {}, 4);
  auto config = make_config({}, {gr(1), gr(0, 1), gr(2), gr(1, 1)});
  auto w1 = try_construct(sig, config);
  auto w2 = try_construct(sig, config);
  REQUIRE(w1.has_value());
  REQUIRE(w2.has_value());
  CHECK(to_json(w1->surface).dump() == to_json(w2->surface).dump());
}

TEST_CASE("coverage matches the oracle's no-witness reporting") {
  // Covered: oracle says Realizable outright.
  auto covered = decide(make_sig(0, {1, 1}, {}, {}, 3), make_config({}, {gr(1), gr(2), gr(4)}));
  CHECK(covered.status == VerdictStatus::Realizable);
  // Genus 2 is classification-only: realizable but no recipe.
  auto uncovered = decide(make_sig(2, {6, 2}, {4}), make_config({gr(0)}));
  CHECK(uncovered.status == VerdictStatus::RealizableNoWitness);
}
