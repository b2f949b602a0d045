#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadstrata/layout.hpp"
#include "quadstrata/surface.hpp"
#include "quadstrata/surface_io.hpp"
#include "quadstrata/verify.hpp"

#include "helpers.hpp"

using namespace quadstrata;

namespace {

// The Q_0(6;-3,-3;-4) surface with residue 0 at the even pole: trivial even
// part (1;1), one odd pole on (1;.), the other collecting (.;1).
FlatSurface fig4_surface() {
  SurfaceBuilder builder;
  int even = builder.add_polar_part(make_polar_part_even(4, 1, {gr(1)}, {gr(1)}));
  int p2 = builder.add_polar_part(make_polar_part_odd(3, OddSide::upper, {gr(1)}));
  int p1 = builder.add_polar_part(make_polar_part_odd(3, OddSide::lower, {gr(1)}));
  builder.glue(builder.group_segment(even, 1), builder.group_segment(p2, 0), Twist::translation);
  builder.glue(builder.group_segment(even, 0), builder.group_segment(p1, 0), Twist::translation);
  return builder.take();
}

// Q_1(4;-4): order-4 part with upper (v,v) and lower (-v,-v), upper segment
// i glued to lower segment i by a half turn.
FlatSurface q1_4_surface(const GaussianRational& v) {
  SurfaceBuilder builder;
  int part = builder.add_polar_part(make_polar_part_even(4, 1, {v, v}, {-v, -v}));
  builder.glue(builder.group_segment(part, 0), builder.group_segment(part, 2), Twist::half_turn);
  builder.glue(builder.group_segment(part, 1), builder.group_segment(part, 3), Twist::half_turn);
  return builder.take();
}

}  // namespace

TEST_CASE("even polar parts follow the residue formula") {
  auto g1 = make_polar_part_even(6, 1, {gr(1), gr(1)}, {});
  CHECK(g1.pole_order == 6);
  CHECK(g1.residue_root.square() == gr(4));
  CHECK(g1.pieces.size() == 3);  // open-right + positive + negative

  auto g2 = make_polar_part_even(4, 1, {gr(1)}, {gr(1)});
  CHECK(g2.residue_root.square() == gr(0));

  auto g3 = make_polar_part_even(4, 1, {gr(1)}, {gr(3)});
  CHECK(g3.residue_root.square() == gr(4));

  CHECK_THROWS_AS(make_polar_part_even(4, 0, {gr(1)}, {}), Error);
  CHECK_THROWS_AS(make_polar_part_even(4, 2, {gr(1)}, {}), Error);
  CHECK_THROWS_AS(make_polar_part_even(5, 1, {gr(1)}, {}), Error);
}

TEST_CASE("order-2 polar parts") {
  CHECK(make_polar_part_order2({gr(1)}).residue_root.square() == gr(1));
  CHECK(make_polar_part_order2({gr(1), gr(0, 1)}).residue_root.square() == gr(0, 2));
  CHECK_THROWS_AS(make_polar_part_order2({}), Error);
  // Zero circumference is rejected: not a cylinder.
  CHECK_THROWS_AS(make_polar_part_order2({gr(1), gr(-1)}), Error);
}

TEST_CASE("odd polar parts have c-2 half-plane cells") {
  // c = 3: one domain; c = 5: a domain plus one open domain. (The piece
  // count is pinned by the cone angle at the pole: order -c needs c-2
  // half planes.)
  auto c3 = make_polar_part_odd(3, OddSide::upper, {gr(1)});
  CHECK(c3.pieces.size() == 1);
  auto c5 = make_polar_part_odd(5, OddSide::lower, {gr(1), gr(1)});
  CHECK(c5.pieces.size() == 2);
  CHECK(c5.pole_order == 5);
  CHECK_THROWS_AS(make_polar_part_odd(4, OddSide::upper, {gr(1)}), Error);
  CHECK_THROWS_AS(make_polar_part_odd(1, OddSide::upper, {gr(1)}), Error);
}

TEST_CASE("broken line self-intersection is caught") {
  CHECK_THROWS_AS(Piece::positive({gr(-1)}), Error);          // folds onto the left ray
  CHECK_THROWS_AS(Piece::positive({gr(1), gr(-2)}), Error);   // doubles back
  CHECK_NOTHROW(Piece::positive({gr(1), gr(-1, 1)}));         // up-left is fine
  CHECK_THROWS_AS(Piece::negative({gr(-1, 1), gr(-1, -1)}), Error);  // ray overlap
  CHECK_NOTHROW(Piece::negative({gr(1, 1), gr(1, -1)}));
  CHECK_THROWS_AS(Piece::cylinder({gr(1), gr(-2, 1)}), Error);  // not monotone
  CHECK_THROWS_AS(Piece::polygon({gr(1), gr(0, 1)}), Error);    // does not close
  CHECK_THROWS_AS(Piece::polygon({gr(1), gr(-1), gr(1), gr(-1)}), Error);
  CHECK_NOTHROW(Piece::polygon({gr(1), gr(0, 1), gr(-1), gr(0, -1)}));
  // Clockwise squares are rejected: boundary orientation is fixed.
  CHECK_THROWS_AS(Piece::polygon({gr(0, 1), gr(1), gr(0, -1), gr(-1)}), Error);
}

TEST_CASE("gluing convention") {
  SurfaceBuilder builder;
  builder.add_cylinder({gr(1), gr(1)});
  builder.add_cylinder({gr(-1), gr(-1)});
  // translation requires u' = -u.
  CHECK_NOTHROW(builder.glue({0, 0}, {1, 0}, Twist::translation));
  // half_turn requires u' = u: the two remaining slots carry 1 and -1.
  CHECK_THROWS_AS(builder.glue({0, 1}, {1, 1}, Twist::half_turn), Error);
  CHECK_NOTHROW(builder.glue({0, 1}, {1, 1}, Twist::translation));

  SurfaceBuilder builder2;
  builder2.add_cylinder({gr(1), gr(1)});
  builder2.add_cylinder({gr(1), gr(1)});
  CHECK_THROWS_AS(builder2.glue({0, 0}, {1, 0}, Twist::translation), Error);
  CHECK_NOTHROW(builder2.glue({0, 0}, {1, 0}, Twist::half_turn));
}

TEST_CASE("gluing errors") {
  SurfaceBuilder builder;
  builder.add_cylinder({gr(1), gr(1)});
  builder.add_cylinder({gr(1), gr(-1, 1), gr(1, 1)});  // irrelevant shape
  CHECK_THROWS_AS(builder.glue({0, 0}, {1, 0}, Twist::translation), Error);  // 1 vs 1
  CHECK_NOTHROW(builder.glue({0, 0}, {1, 0}, Twist::half_turn));
  CHECK_THROWS_AS(builder.glue({0, 0}, {1, 2}, Twist::half_turn), Error);  // already glued
  CHECK_THROWS_AS(builder.glue({0, 1}, {0, 1}, Twist::half_turn), Error);  // self
  CHECK_THROWS_AS(builder.glue({0, 1}, {5, 0}, Twist::translation), Error);
}

TEST_CASE("verify: genus-0 odd-pole surface (zero residue)") {
  LocalInvariants inv = verify(fig4_surface());
  CHECK(inv.genus == 0);
  CHECK(inv.zero_orders == std::vector<int>{6});
  CHECK(inv.pole_orders == std::vector<int>{-3, -3, -4});
  CHECK(inv.residues.at(0) == gr(0));
  CHECK(inv.connected);
  CHECK(inv.primitive);
  auto sig = inv.signature();
  CHECK(sig.genus == 0);
  CHECK(sig.odd_pole_orders == std::vector<int>{3, 3});
}

TEST_CASE("verify: one-holed torus strip") {
  GaussianRational v = gr(1, 1);
  LocalInvariants inv = verify(q1_4_surface(v));
  CHECK(inv.genus == 1);
  CHECK(inv.zero_orders == std::vector<int>{4});
  CHECK(inv.pole_orders == std::vector<int>{-4});
  CHECK(inv.residues.at(0) == (v * Rational(4)).square());
  CHECK(inv.primitive);
}

TEST_CASE("verify: slit plane with rotated halves (cicatrice)") {
  SurfaceBuilder builder;
  int part = builder.add_polar_part(make_polar_part_even(4, 1, {gr(1), gr(1)}, {gr(1), gr(1)}));
  builder.glue(builder.group_segment(part, 0), builder.group_segment(part, 1), Twist::half_turn);
  builder.glue(builder.group_segment(part, 2), builder.group_segment(part, 3), Twist::half_turn);
  LocalInvariants inv = verify(builder.surface());
  CHECK(inv.genus == 0);
  CHECK(inv.zero_orders == std::vector<int>{-1, -1, 2});
  CHECK(inv.residues.at(0) == gr(0));
  CHECK(inv.primitive);
}

TEST_CASE("verify: free edges and convention violations are rejected") {
  SurfaceBuilder builder;
  builder.add_cylinder({gr(1)});
  CHECK_THROWS_AS(verify(builder.surface()), Error);  // free edge

  // Tampered surface: break a vector after gluing.
  FlatSurface surface = fig4_surface();
  surface.pieces[1].vectors[0] = gr(2);
  CHECK_THROWS_AS(verify(surface), Error);
}

TEST_CASE("verify: pole marks are cross-checked") {
  FlatSurface surface = fig4_surface();
  surface.pole_marks[0].order = 6;  // lie about the order
  CHECK_THROWS_AS(verify(surface), Error);
  surface = fig4_surface();
  surface.pole_marks.pop_back();  // unmarked piece
  CHECK_THROWS_AS(verify(surface), Error);
}

TEST_CASE("verify: translation-only surfaces are not primitive") {
  // Two cylinders glued along both slots by translations: a square-tiled
  // torus minus nothing, holonomy trivial.
  SurfaceBuilder builder;
  builder.add_cylinder({gr(1), gr(1)});
  builder.add_cylinder({gr(-1), gr(-1)});
  builder.glue({0, 0}, {1, 0}, Twist::translation);
  builder.glue({0, 1}, {1, 1}, Twist::translation);
  LocalInvariants inv = verify(builder.surface());
  CHECK(!inv.primitive);
  CHECK(inv.genus == 0);
  CHECK(inv.zero_orders == std::vector<int>{0, 0});
  CHECK(inv.connected);
}

TEST_CASE("verify: disconnected unions are reported") {
  SurfaceBuilder builder;
  for (int copy = 0; copy < 2; ++copy) {
    GaussianRational v = gr(1, 1);
    int part = builder.add_polar_part(make_polar_part_even(4, 1, {v, v}, {-v, -v}));
    builder.glue(builder.group_segment(part, 0), builder.group_segment(part, 2), Twist::half_turn);
    builder.glue(builder.group_segment(part, 1), builder.group_segment(part, 3), Twist::half_turn);
  }
  LocalInvariants inv = verify(builder.surface());
  CHECK(!inv.connected);
  CHECK(inv.zero_orders.size() == 2);
}

TEST_CASE("degree identity and doubling across sample surfaces") {
  std::vector<FlatSurface> samples;
  samples.push_back(fig4_surface());
  samples.push_back(q1_4_surface(gr(1, 1)));
  for (const auto& surface : samples) {
    LocalInvariants inv = verify(surface);
    long degree = 0;
    for (int a : inv.zero_orders) degree += a;
    for (int o : inv.pole_orders) degree += o;
    CHECK(degree == 4L * inv.genus - 4);

    LocalInvariants doubled = verify(scale_surface(surface, Rational(2)));
    CHECK(doubled.genus == inv.genus);
    CHECK(doubled.zero_orders == inv.zero_orders);
    CHECK(doubled.pole_orders == inv.pole_orders);
    CHECK(doubled.primitive == inv.primitive);
    for (const auto& [mark, value] : inv.residues)
      CHECK(doubled.residues.at(mark) == value * Rational(4));
  }
}

TEST_CASE("loop index: small circle around a flat vertex") {
  // Unit square torus: polygon (1, i, -1, -i), opposite sides translated.
  SurfaceBuilder builder;
  int poly = builder.add_polygon({gr(1), gr(0, 1), gr(-1), gr(0, -1)});
  builder.glue({poly, 0}, {poly, 2}, Twist::translation);
  builder.glue({poly, 1}, {poly, 3}, Twist::translation);
  // Hmm: a torus built from one polygon has no pole mark and chi = 0.
  LocalInvariants inv = verify(builder.surface());
  CHECK(inv.genus == 1);
  CHECK(inv.zero_orders == std::vector<int>{0});
  CHECK(!inv.primitive);

  std::vector<LoopStep> circle = {{poly, 0, 1}, {poly, 1, 1}, {poly, 2, 1}, {poly, 3, 1}};
  CHECK(loop_index(builder.surface(), circle) == 2);

  // The horizontal core geodesic: traverse the bottom edge and sweep past
  // the vertex onto itself; the tangent never turns.
  std::vector<LoopStep> geodesic = {{poly, 0, 2}};
  CHECK(loop_index(builder.surface(), geodesic) == 0);

  CHECK_THROWS_AS(loop_index(builder.surface(), {}), Error);
  std::vector<LoopStep> broken = {{poly, 0, 1}, {poly, 3, 1}};
  CHECK_THROWS_AS(loop_index(builder.surface(), broken), Error);
}

TEST_CASE("surface json round trip is stable") {
  FlatSurface surface = fig4_surface();
  Json j = to_json(surface);
  FlatSurface back = surface_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(to_json(back).dump() == j.dump());
  LocalInvariants inv = verify(back);
  CHECK(inv.zero_orders == std::vector<int>{6});
}

TEST_CASE("svg rendering emits a document") {
  std::string svg = surface_to_svg(fig4_surface(), 42);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("line") != std::string::npos);
}
