#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadstrata/json_io.hpp"
#include "quadstrata/rational.hpp"
#include "quadstrata/signature.hpp"

#include "helpers.hpp"

#include <random>

using namespace quadstrata;
using quadstrata::testing::make_config;
using quadstrata::testing::make_sig;

TEST_CASE("rational parsing and printing") {
  CHECK(rational_to_string(rational_from_string("3/6")) == "1/2");
  CHECK(rational_to_string(rational_from_string("-4/2")) == "-2");
  CHECK(rational_to_string(rational_from_string("7")) == "7");
  CHECK_THROWS_AS(rational_from_string("1/0"), Error);
  CHECK_THROWS_AS(rational_from_string("abc"), Error);
  CHECK_THROWS_AS(rational_from_string(""), Error);
}

TEST_CASE("gaussian rationals form an exact field") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 20);
  auto random_q = [&] { return Rational(num(rng), den(rng)); };
  for (int i = 0; i < 300; ++i) {
    GaussianRational a{random_q(), random_q()};
    GaussianRational b{random_q(), random_q()};
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
  }
  GaussianRational i01 = gr(0, 1);
  CHECK(i01 * i01 == gr(-1));
}

TEST_CASE("complex square roots in Q(i)") {
  CHECK(*complex_sqrt(gr(4)) == gr(2));
  CHECK(*complex_sqrt(gr(-4)) == gr(0, 2));
  CHECK(*complex_sqrt(gr(0, 2)) == gr(1, 1));
  CHECK(!complex_sqrt(gr(2)).has_value());
  for (int re = -6; re <= 6; ++re)
    for (int im = -6; im <= 6; ++im) {
      GaussianRational z{Rational(re), Rational(im)};
      auto root = complex_sqrt(z.square());
      REQUIRE(root.has_value());
      CHECK(root->square() == z.square());
    }
}

TEST_CASE("turning accumulator tracks multiples of pi exactly") {
  TurningAccumulator acc;
  acc.add(gr(0, 1));   // pi/2
  acc.add(gr(0, 1));   // pi/2
  acc.add(gr(-1, 1));  // 3pi/4
  acc.add(gr(-1, -1)); // -3pi/4 + ... sums to 3pi/4 + 5pi/4? total must close
  acc.add(gr(0, 1));   // remaining to land on a multiple of pi
  // arg sum: pi/2 + pi/2 + 3pi/4 + (-3pi/4) + pi/2 = 3pi/2: not a multiple.
  CHECK_THROWS_AS(acc.total_half_turns(), Error);

  TurningAccumulator acc2;
  for (int k = 0; k < 4; ++k) acc2.add(gr(0, 1));
  CHECK(acc2.total_half_turns() == 2);  // four quarter turns
  TurningAccumulator acc3;
  for (int k = 0; k < 4; ++k) acc3.add(gr(1, 1));
  CHECK(acc3.total_half_turns() == 1);  // four eighth turns
  TurningAccumulator acc4;
  for (int k = 0; k < 5; ++k) acc4.add(gr(-1, -1));  // 5 * (-3pi/4)
  acc4.add(gr(-1, 1));                               // + 3pi/4: total -3pi
  CHECK(acc4.total_half_turns() == -3);
}

TEST_CASE("signature validation") {
  auto v = validate_signature(make_sig(0, {1, 3}, {4}, {}, 2));
  CHECK(v.odd_zeros == 2);
  CHECK(v.even_zeros == 0);
  CHECK(!v.forces_square);

  auto sq = validate_signature(make_sig(0, {2, 2}, {4, 4}));
  CHECK(sq.forces_square);
  CHECK(sq.odd_zeros == 0);

  CHECK_THROWS_AS(validate_signature(make_sig(1, {1})), Error);          // degree
  CHECK_THROWS_AS(validate_signature(make_sig(0, {-2, 2}, {4})), Error); // order < -1
  CHECK_THROWS_AS(validate_signature(make_sig(0, {1, 1}, {5})), Error);  // odd "even" pole
  CHECK_THROWS_AS(validate_signature(make_sig(0, {1, 1}, {2})), Error);  // even pole < 4
  CHECK_THROWS_AS(validate_signature(make_sig(0, {3, 3}, {}, {2}, 0)), Error);

  // Canonical order: odd zeros first, descending.
  auto canon = validate_signature(make_sig(0, {2, 1, 4, 3}, {}, {}, 7));
  CHECK(canon.sig.zero_orders == std::vector<int>{3, 1, 4, 2});
  // Idempotence.
  CHECK(validate_signature(canon.sig).sig.zero_orders == canon.sig.zero_orders);
}

TEST_CASE("forces_square implies no odd singularities and genus 0") {
  for (const auto& sig : {make_sig(0, {2, 2}, {4, 4}), make_sig(0, {4}, {4, 4}),
                          make_sig(0, {0, 0}, {4}, {}, 0)}) {
    auto v = validate_signature(sig);
    if (v.forces_square) {
      CHECK(v.odd_zeros == 0);
      CHECK(sig.r() == 0);
      CHECK(sig.genus == 0);
    }
  }
}

TEST_CASE("holomorphic stratum emptiness") {
  CHECK(!stratum_nonempty_holomorphic(make_sig(2, {4})));
  CHECK(!stratum_nonempty_holomorphic(make_sig(2, {1, 3})));
  CHECK(!stratum_nonempty_holomorphic(make_sig(1, {})));
  CHECK(!stratum_nonempty_holomorphic(make_sig(1, {-1, 1})));
  CHECK(stratum_nonempty_holomorphic(make_sig(3, {8})));
  CHECK(stratum_nonempty_holomorphic(make_sig(2, {2, 2})));
  CHECK(stratum_nonempty_holomorphic(make_sig(2, {3, 1, -1, 1})));
  CHECK_THROWS_AS(stratum_nonempty_holomorphic(make_sig(0, {1, 3}, {4}, {}, 1)), Error);
}

TEST_CASE("maximal disjoint cylinders") {
  CHECK(max_disjoint_cylinders(make_sig(2, {1, 1, 2})) == 3);
  CHECK(max_disjoint_cylinders(make_sig(1, {2, -1, -1})) == 2);
  CHECK(max_disjoint_cylinders(make_sig(2, {2, 2})) == 3);
  CHECK(max_disjoint_cylinders(make_sig(3, {8})) == 3);
  CHECK_THROWS_AS(max_disjoint_cylinders(make_sig(2, {4})), Error);

  // Bound properties over small strata.
  for (int g = 1; g <= 3; ++g)
    for (int a1 = -1; a1 <= 4; ++a1)
      for (int a2 = a1; a2 <= 8; ++a2) {
        StratumSignature sig = make_sig(g, {a1, a2});
        if (sig.order_sum() != 4 * g - 4) continue;
        if (!stratum_nonempty_holomorphic(sig)) continue;
        long m = max_disjoint_cylinders(sig);
        CHECK(m >= g - 1);
        CHECK(m >= 1);
      }
}

TEST_CASE("rooted configurations") {
  auto sig = make_sig(0, {1, 3}, {4}, {}, 2);
  CHECK_THROWS_AS(validate_config(sig, make_config({gr(1)}, {gr(1)})), Error);
  CHECK_THROWS_AS(validate_config(sig, make_config({gr(1)}, {gr(1), gr(0)})), Error);
  validate_config(sig, make_config({gr(0)}, {gr(1), gr(2)}));

  auto config = make_config({gr(0), gr(2)}, {gr(4)});
  auto norm = normalize_by_first_nonzero(config);
  CHECK(norm.even_pole_roots[1] == gr(1));
  CHECK(norm.double_pole_roots[0] == gr(2));
}

TEST_CASE("legal rotation numbers") {
  CHECK(legal_rotation_numbers(make_sig(1, {4}, {4})) == std::vector<int>{1});
  CHECK(legal_rotation_numbers(make_sig(1, {6}, {6})) == std::vector<int>{1, 3});
  CHECK(legal_rotation_numbers(make_sig(1, {12}, {6, 6})) == std::vector<int>{1, 3});
  CHECK(legal_rotation_numbers(make_sig(1, {9}, {9})) == std::vector<int>{1, 3});
  CHECK(legal_rotation_numbers(make_sig(1, {2}, {}, {}, 1)) == std::vector<int>{1});
  CHECK_THROWS_AS(validate_component(make_sig(1, {6}, {6}), ComponentSelector::rotation(2)),
                  Error);
  CHECK_THROWS_AS(validate_component(make_sig(2, {6, 2}, {4}), ComponentSelector::rotation(1)),
                  Error);
}

TEST_CASE("json round trips") {
  auto sig = make_sig(1, {3, 3}, {6}, {}, 0);
  auto back = signature_from_json(to_json(sig));
  CHECK(back == sig);

  GaussianRational z{Rational(-3, 7), Rational(2, 5)};
  CHECK(gaussian_from_json(to_json(z)) == z);

  auto config = make_config({gr(0), z}, {gr(1, 1)});
  auto sig2 = make_sig(0, {1, 9}, {4, 4}, {}, 1);
  auto parsed = config_from_json(to_json(config), sig2);
  CHECK(parsed.even_pole_roots == config.even_pole_roots);
  CHECK(parsed.double_pole_roots == config.double_pole_roots);
}
