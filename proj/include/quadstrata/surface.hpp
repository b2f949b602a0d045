#pragma once

#include "quadstrata/rational.hpp"

#include <string>
#include <vector>

namespace quadstrata {

// Flat pieces with boundary. Every piece decomposes into half-plane-like
// cells whose boundary walk is [incoming ray, segments..., outgoing ray]
// (or a closed cycle of segments for bounded polygons). Rays are horizontal
// except on cylinder ends, where they are perpendicular to the circumference.
//
//  - positive_domain(v_1..v_l): closure of the region above the broken line
//    R_- , v_1, ..., v_l, R_+.
//  - negative_domain(w_1..w_l): region below the analogous line.
//  - open_left / open_right: a positive and a negative domain glued along
//    their R_+ (resp. R_-) rays; the glued rays are hidden interior edges.
//  - cylinder_end(v_1..v_l): half-infinite cylinder over the broken line
//    v_1..v_l; the two boundary rays are identified by translation.
//  - polygon(v_1..v_k): bounded simple polygon, positively oriented,
//    sum of vectors zero.
enum class PieceKind {
  positive_domain,
  negative_domain,
  open_left,
  open_right,
  cylinder_end,
  polygon,
};

const char* piece_kind_name(PieceKind kind);
PieceKind piece_kind_from_name(const std::string& name);

struct Piece {
  PieceKind kind = PieceKind::positive_domain;
  std::vector<GaussianRational> vectors;        // v_i (upper vectors)
  std::vector<GaussianRational> lower_vectors;  // w_j for open_* domains

  static Piece positive(std::vector<GaussianRational> v);
  static Piece negative(std::vector<GaussianRational> w);
  static Piece open_left(std::vector<GaussianRational> v, std::vector<GaussianRational> w);
  static Piece open_right(std::vector<GaussianRational> v, std::vector<GaussianRational> w);
  static Piece cylinder(std::vector<GaussianRational> v);
  static Piece polygon(std::vector<GaussianRational> v);
};

// Position of a segment or ray on a piece's exposed boundary walk.
//
// Exposed edge order by kind (S = segment, R = ray):
//   positive_domain:  [R left-in, S v_1..v_l, R right-out]
//   negative_domain:  [R right-in, S -w_l..-w_1, R left-out]
//   open_left:        [R upper-in, S v_1..v_l, S -w_m..-w_1, R lower-out]
//   open_right:       [S v_1..v_l, R upper-out, R lower-in, S -w_m..-w_1]
//   cylinder_end:     [S v_1..v_l]
//   polygon:          [S v_1..v_k]
struct EdgeRef {
  int piece = 0;
  int boundary_index = 0;

  bool operator==(const EdgeRef& o) const {
    return piece == o.piece && boundary_index == o.boundary_index;
  }
};

enum class Twist { translation, half_turn };

const char* twist_name(Twist twist);

// Convention (fixed): with u, u' the edge vectors read along each side's own
// positively oriented boundary, translation requires u' = -u and half_turn
// requires u' = u. Rays store primitive travel directions; translation pairs
// opposite directions, half_turn equal ones. Ray gluings must pair an
// incoming ray with an outgoing one.
struct Gluing {
  EdgeRef a;
  EdgeRef b;
  Twist twist = Twist::translation;
};

// Declares that a group of pieces forms one polar part of the given order:
// order 2 for a single cylinder end, order b >= 3 for a group of b-2 cells.
struct PoleMark {
  int order = 2;
  std::vector<int> pieces;
  std::string name;  // optional label for reports
};

struct FlatSurface {
  std::vector<Piece> pieces;
  std::vector<Gluing> gluings;
  std::vector<PoleMark> pole_marks;
};

// A polar-part template: pieces plus their internal gluings, with edges
// addressed relative to the group (piece indices 0-based within it).
struct PieceGroup {
  std::vector<Piece> pieces;
  std::vector<Gluing> internal_gluings;
  int pole_order = 0;                 // positive: represents a pole of order -pole_order
  GaussianRational residue_root;      // meaningful for even orders only
  // Exposed segment edges of the group, in construction order.
  std::vector<EdgeRef> segments;
};

// Polar part of even order b >= 4 and type tau in [1, b/2-1]:
// tau-1 open-left domains, b/2-tau-1 open-right domains, one positive and one
// negative domain, rays glued cyclically by translation. The represented pole
// has order -b and quadratic residue (sum(upper) - sum(lower))^2.
PieceGroup make_polar_part_even(int b, int tau, std::vector<GaussianRational> upper,
                                std::vector<GaussianRational> lower);

// Half-infinite cylinder: pole of order -2, residue (sum v_i)^2 (nonzero).
PieceGroup make_polar_part_order2(std::vector<GaussianRational> vectors);

enum class OddSide { upper, lower };

// Polar part of odd order c >= 3: one positive (resp. negative) domain plus
// (c-1)/2 - 1 open domains, rays glued cyclically by translation except one
// half-turn closing gluing. The pole has order -c and no residue.
PieceGroup make_polar_part_odd(int c, OddSide side, std::vector<GaussianRational> vectors);

// Incremental surface assembly. Pieces and whole polar parts are appended;
// gluings are validated eagerly against the vector convention.
class SurfaceBuilder {
 public:
  // Returns the index of the added piece. Cylinder ends and polygons may be
  // added directly; cylinder ends receive an automatic order-2 pole mark.
  int add_cylinder(std::vector<GaussianRational> vectors, const std::string& name = "");
  int add_polygon(std::vector<GaussianRational> vectors);

  // Adds all pieces of the group plus its internal gluings and pole mark.
  // Returns the index of the group's first piece; the group's exposed
  // segment k is then EdgeRef{first + segments[k].piece, ...}.
  int add_polar_part(const PieceGroup& group, const std::string& name = "");

  // Declares a custom polar part: the pieces are appended and marked with
  // the given order, and the caller supplies the ray gluings explicitly.
  int add_marked_pieces(const std::vector<Piece>& pieces, int order, const std::string& name = "");

  // Exposed segment k of the polar part that starts at piece index `first`.
  EdgeRef group_segment(int first, int k) const;

  void glue(EdgeRef a, EdgeRef b, Twist twist);

  const FlatSurface& surface() const { return surface_; }
  FlatSurface take() { return std::move(surface_); }

 private:
  FlatSurface surface_;
  std::vector<std::vector<EdgeRef>> group_segments_;
  std::vector<int> group_first_;
};

// Multiplies every vector of every piece by a positive rational factor
// (orders, genus, connectivity and primitivity are unchanged; residues are
// multiplied by the square). The factor must be real so the pieces keep
// their horizontal-ray normalization.
FlatSurface scale_surface(const FlatSurface& surface, const Rational& factor);

}  // namespace quadstrata
