#include "quadstrata/surface.hpp"

#include "quadstrata/layout.hpp"

#include <algorithm>

namespace quadstrata {

const char* piece_kind_name(PieceKind kind) {
  switch (kind) {
    case PieceKind::positive_domain: return "positive_domain";
    case PieceKind::negative_domain: return "negative_domain";
    case PieceKind::open_left: return "open_left";
    case PieceKind::open_right: return "open_right";
    case PieceKind::cylinder_end: return "cylinder_end";
    case PieceKind::polygon: return "polygon";
  }
  return "?";
}

PieceKind piece_kind_from_name(const std::string& name) {
  for (PieceKind k : {PieceKind::positive_domain, PieceKind::negative_domain, PieceKind::open_left,
                      PieceKind::open_right, PieceKind::cylinder_end, PieceKind::polygon})
    if (name == piece_kind_name(k)) return k;
  throw Error(ErrorCode::BadInput, "unknown piece kind \"" + name + "\"");
}

const char* twist_name(Twist twist) {
  return twist == Twist::translation ? "translation" : "half_turn";
}

Piece Piece::positive(std::vector<GaussianRational> v) {
  Piece p{PieceKind::positive_domain, std::move(v), {}};
  layout_piece(p);
  return p;
}
Piece Piece::negative(std::vector<GaussianRational> w) {
  Piece p{PieceKind::negative_domain, std::move(w), {}};
  layout_piece(p);
  return p;
}
Piece Piece::open_left(std::vector<GaussianRational> v, std::vector<GaussianRational> w) {
  Piece p{PieceKind::open_left, std::move(v), std::move(w)};
  layout_piece(p);
  return p;
}
Piece Piece::open_right(std::vector<GaussianRational> v, std::vector<GaussianRational> w) {
  Piece p{PieceKind::open_right, std::move(v), std::move(w)};
  layout_piece(p);
  return p;
}
Piece Piece::cylinder(std::vector<GaussianRational> v) {
  Piece p{PieceKind::cylinder_end, std::move(v), {}};
  layout_piece(p);
  return p;
}
Piece Piece::polygon(std::vector<GaussianRational> v) {
  Piece p{PieceKind::polygon, std::move(v), {}};
  layout_piece(p);
  return p;
}

// ---------------------------------------------------------------------------
// Exact intersection predicates

bool elements_intersect(const LineElement& a, const LineElement& b) {
  GaussianRational d = b.origin - a.origin;
  Rational denom = cross(a.dir, b.dir);
  if (denom != 0) {
    Rational t = cross(d, b.dir) / denom;
    Rational u = cross(d, a.dir) / denom;
    if (t < 0 || (a.bounded && t > 1)) return false;
    if (u < 0 || (b.bounded && u > 1)) return false;
    return true;
  }
  // Parallel: intersect only if collinear with overlapping parameter ranges.
  if (cross(d, a.dir) != 0) return false;
  Rational scale = dot(a.dir, a.dir);
  Rational tb0 = dot(d, a.dir);
  Rational step = dot(b.dir, a.dir);  // nonzero (parallel, both nonzero)
  // a covers [0, scale] (or [0, inf)); b covers tb0 .. tb0 + step (or a ray).
  Rational lo = tb0, hi = tb0;
  bool hi_inf = false, lo_inf = false;
  if (b.bounded) {
    Rational other = tb0 + step;
    lo = std::min(tb0, other);
    hi = std::max(tb0, other);
  } else if (step > 0) {
    hi_inf = true;
  } else {
    lo_inf = true;
  }
  Rational a_hi = scale;
  bool a_hi_inf = !a.bounded;
  // Overlap of [0, a_hi(+inf)] and [lo(-inf), hi(+inf)].
  bool below = !hi_inf && hi < 0;
  bool above = !a_hi_inf && !lo_inf && lo > a_hi;
  return !(below || above);
}

namespace {

LineElement edge_element(const CellEdge& e) {
  if (!e.is_ray) return {e.finite_point, e.v, true};
  if (e.ray_in) return {e.finite_point, -e.v, false};
  return {e.finite_point, e.v, false};
}

// The boundary walk must only touch itself at shared endpoints of
// consecutive edges, and never fold back onto itself.
void check_cell_simple(const Cell& cell, const std::string& what) {
  int n = (int)cell.edges.size();
  auto arriving_dir = [&](int i) { return cell.edges[i].v; };
  auto leading_dir = [&](int i) { return cell.edges[i].v; };
  int pairs = cell.cyclic ? n : n - 1;
  for (int i = 0; i < pairs; ++i) {
    int j = (i + 1) % n;
    GaussianRational u = arriving_dir(i), w = leading_dir(j);
    if (cross(u, w) == 0 && dot(u, w) < 0)
      throw Error(ErrorCode::SelfIntersection, what + ": boundary folds back on itself");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool adjacent = (j == i + 1) || (cell.cyclic && i == 0 && j == n - 1);
      if (adjacent) continue;
      if (elements_intersect(edge_element(cell.edges[i]), edge_element(cell.edges[j])))
        throw Error(ErrorCode::SelfIntersection, what + ": boundary self-intersects");
    }
  }
}

Cell positive_cell(const std::vector<GaussianRational>& v, bool hide_in, bool hide_out) {
  Cell cell;
  GaussianRational x{Rational(1), Rational(0)};
  GaussianRational p{Rational(0), Rational(0)};
  cell.edges.push_back({true, true, x, p, hide_in});
  for (const auto& vi : v) {
    cell.edges.push_back({false, false, vi, p, false});
    p = p + vi;
  }
  cell.edges.push_back({true, false, x, p, hide_out});
  return cell;
}

Cell negative_cell(const std::vector<GaussianRational>& w, bool hide_in, bool hide_out) {
  Cell cell;
  GaussianRational mx{Rational(-1), Rational(0)};
  GaussianRational total{Rational(0), Rational(0)};
  for (const auto& wi : w) total = total + wi;
  GaussianRational p = total;
  cell.edges.push_back({true, true, mx, p, hide_in});
  for (int i = (int)w.size() - 1; i >= 0; --i) {
    GaussianRational step = -w[i];
    cell.edges.push_back({false, false, step, p, false});
    p = p + step;
  }
  cell.edges.push_back({true, false, mx, p, hide_out});
  return cell;
}

void check_vectors_nonzero(const std::vector<GaussianRational>& v, const std::string& what) {
  for (const auto& x : v)
    if (x.is_zero()) throw Error(ErrorCode::BadInput, what + ": zero boundary vector");
}

}  // namespace

PieceLayout layout_piece(const Piece& piece) {
  PieceLayout out;
  check_vectors_nonzero(piece.vectors, piece_kind_name(piece.kind));
  check_vectors_nonzero(piece.lower_vectors, piece_kind_name(piece.kind));
  if (piece.kind != PieceKind::open_left && piece.kind != PieceKind::open_right &&
      !piece.lower_vectors.empty())
    throw Error(ErrorCode::BadInput, "lower vectors only belong to open domains");

  auto index_all = [&out]() {
    for (int c = 0; c < (int)out.cells.size(); ++c)
      for (int e = 0; e < (int)out.cells[c].edges.size(); ++e)
        if (!out.cells[c].edges[e].hidden) out.indexed_edges.push_back({c, e});
    out.exposed_count = (int)out.indexed_edges.size();
    for (int c = 0; c < (int)out.cells.size(); ++c)
      for (int e = 0; e < (int)out.cells[c].edges.size(); ++e)
        if (out.cells[c].edges[e].hidden) out.indexed_edges.push_back({c, e});
  };

  switch (piece.kind) {
    case PieceKind::positive_domain: {
      out.cells.push_back(positive_cell(piece.vectors, false, false));
      check_cell_simple(out.cells[0], "positive domain");
      break;
    }
    case PieceKind::negative_domain: {
      out.cells.push_back(negative_cell(piece.vectors, false, false));
      check_cell_simple(out.cells[0], "negative domain");
      break;
    }
    case PieceKind::open_left: {
      out.cells.push_back(positive_cell(piece.vectors, false, true));
      out.cells.push_back(negative_cell(piece.lower_vectors, true, false));
      check_cell_simple(out.cells[0], "open-left domain (upper)");
      check_cell_simple(out.cells[1], "open-left domain (lower)");
      out.internal_gluings.push_back(
          {{0, (int)out.cells[0].edges.size() - 1}, {1, 0}});
      break;
    }
    case PieceKind::open_right: {
      out.cells.push_back(positive_cell(piece.vectors, true, false));
      out.cells.push_back(negative_cell(piece.lower_vectors, false, true));
      check_cell_simple(out.cells[0], "open-right domain (upper)");
      check_cell_simple(out.cells[1], "open-right domain (lower)");
      out.internal_gluings.push_back(
          {{1, (int)out.cells[1].edges.size() - 1}, {0, 0}});
      break;
    }
    case PieceKind::cylinder_end: {
      if (piece.vectors.empty())
        throw Error(ErrorCode::BadInput, "cylinder end needs at least one boundary vector");
      GaussianRational circumference{Rational(0), Rational(0)};
      for (const auto& v : piece.vectors) circumference = circumference + v;
      if (circumference.is_zero())
        throw Error(ErrorCode::SelfIntersection, "cylinder end has zero circumference");
      for (const auto& v : piece.vectors)
        if (dot(v, circumference) <= 0)
          throw Error(ErrorCode::SelfIntersection,
                      "cylinder boundary is not monotone along the circumference");
      GaussianRational ray_dir =
          primitive_direction({-circumference.im, circumference.re});
      Cell cell;
      GaussianRational p{Rational(0), Rational(0)};
      cell.edges.push_back({true, true, -ray_dir, p, true});
      for (const auto& v : piece.vectors) {
        cell.edges.push_back({false, false, v, p, false});
        p = p + v;
      }
      cell.edges.push_back({true, false, ray_dir, p, true});
      out.cells.push_back(cell);
      out.internal_gluings.push_back({{0, (int)cell.edges.size() - 1}, {0, 0}});
      break;
    }
    case PieceKind::polygon: {
      if (piece.vectors.size() < 3)
        throw Error(ErrorCode::DegeneratePolygon, "polygon needs at least three edges");
      GaussianRational total{Rational(0), Rational(0)};
      Cell cell;
      cell.cyclic = true;
      GaussianRational p{Rational(0), Rational(0)};
      Rational twice_area(0);
      for (const auto& v : piece.vectors) {
        cell.edges.push_back({false, false, v, p, false});
        twice_area += cross(p, p + v);
        p = p + v;
        total = total + v;
      }
      if (!total.is_zero()) throw Error(ErrorCode::DegeneratePolygon, "polygon does not close up");
      if (twice_area <= 0)
        throw Error(ErrorCode::DegeneratePolygon, "polygon must be positively oriented");
      out.cells.push_back(cell);
      check_cell_simple(out.cells[0], "polygon");
      break;
    }
  }
  index_all();
  return out;
}

// ---------------------------------------------------------------------------
// Polar parts

PieceGroup make_polar_part_even(int b, int tau, std::vector<GaussianRational> upper,
                                std::vector<GaussianRational> lower) {
  if (b < 4 || b % 2 != 0) throw Error(ErrorCode::BadOrder, "even polar part needs even order >= 4");
  if (tau < 1 || tau > b / 2 - 1) throw Error(ErrorCode::BadType, "type must lie in [1, b/2-1]");
  PieceGroup group;
  group.pole_order = b;
  for (const auto& v : upper) group.residue_root = group.residue_root + v;
  for (const auto& w : lower) group.residue_root = group.residue_root - w;

  int n_left = tau - 1, n_right = b / 2 - tau - 1;
  // Piece order: open-lefts, positive, open-rights, negative.
  std::vector<int> left_ids, right_ids;
  for (int i = 0; i < n_left; ++i) {
    group.pieces.push_back(Piece::open_left({}, {}));
    left_ids.push_back((int)group.pieces.size() - 1);
  }
  group.pieces.push_back(Piece::positive(upper));
  int pos_id = (int)group.pieces.size() - 1;
  for (int i = 0; i < n_right; ++i) {
    group.pieces.push_back(Piece::open_right({}, {}));
    right_ids.push_back((int)group.pieces.size() - 1);
  }
  group.pieces.push_back(Piece::negative(lower));
  int neg_id = (int)group.pieces.size() - 1;

  int lu = (int)upper.size(), lw = (int)lower.size();
  EdgeRef pos_left{pos_id, 0}, pos_right{pos_id, lu + 1};
  EdgeRef neg_right{neg_id, 0}, neg_left{neg_id, lw + 1};
  // open_left exposes [upper ray 0, lower ray 1]; open_right [upper ray 0, lower ray 1].
  auto ol_upper = [](int id) { return EdgeRef{id, 0}; };
  auto ol_lower = [](int id) { return EdgeRef{id, 1}; };
  auto or_upper = [](int id) { return EdgeRef{id, 0}; };
  auto or_lower = [](int id) { return EdgeRef{id, 1}; };

  // Left chain: negative left ray -> OL_1 -> ... -> OL_{tau-1} -> positive left ray.
  EdgeRef prev = neg_left;
  for (int id : left_ids) {
    group.internal_gluings.push_back({prev, ol_upper(id), Twist::translation});
    prev = ol_lower(id);
  }
  group.internal_gluings.push_back({prev, pos_left, Twist::translation});
  // Right chain: positive right ray -> OR_1 -> ... -> negative right ray.
  prev = pos_right;
  for (int id : right_ids) {
    group.internal_gluings.push_back({prev, or_lower(id), Twist::translation});
    prev = or_upper(id);
  }
  group.internal_gluings.push_back({prev, neg_right, Twist::translation});

  for (int k = 0; k < lu; ++k) group.segments.push_back({pos_id, 1 + k});
  for (int k = 0; k < lw; ++k) group.segments.push_back({neg_id, 1 + k});
  return group;
}

PieceGroup make_polar_part_order2(std::vector<GaussianRational> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::BadInput, "order-2 polar part needs l >= 1 vectors");
  PieceGroup group;
  group.pole_order = 2;
  for (const auto& v : vectors) group.residue_root = group.residue_root + v;
  int l = (int)vectors.size();
  group.pieces.push_back(Piece::cylinder(std::move(vectors)));
  for (int k = 0; k < l; ++k) group.segments.push_back({0, k});
  return group;
}

PieceGroup make_polar_part_odd(int c, OddSide side, std::vector<GaussianRational> vectors) {
  if (c < 3 || c % 2 == 0) throw Error(ErrorCode::BadOrder, "odd polar part needs odd order >= 3");
  int ell = (c - 1) / 2;
  PieceGroup group;
  group.pole_order = c;
  int l = (int)vectors.size();

  if (side == OddSide::upper) {
    group.pieces.push_back(Piece::positive(vectors));
    for (int i = 0; i < ell - 1; ++i) group.pieces.push_back(Piece::open_left({}, {}));
    EdgeRef dom_left{0, 0}, dom_right{0, l + 1};
    // dom_left -> OL_1.lower, OL_i.upper -> OL_{i+1}.lower, last OL.upper -> dom_right (half turn).
    EdgeRef prev = dom_left;
    for (int i = 0; i < ell - 1; ++i) {
      group.internal_gluings.push_back({prev, EdgeRef{1 + i, 1}, Twist::translation});
      prev = EdgeRef{1 + i, 0};
    }
    group.internal_gluings.push_back({dom_right, prev, Twist::half_turn});
    for (int k = 0; k < l; ++k) group.segments.push_back({0, 1 + k});
  } else {
    group.pieces.push_back(Piece::negative(vectors));
    for (int i = 0; i < ell - 1; ++i) group.pieces.push_back(Piece::open_right({}, {}));
    EdgeRef dom_right{0, 0}, dom_left{0, l + 1};
    EdgeRef prev = dom_right;
    for (int i = 0; i < ell - 1; ++i) {
      group.internal_gluings.push_back({prev, EdgeRef{1 + i, 0}, Twist::translation});
      prev = EdgeRef{1 + i, 1};
    }
    group.internal_gluings.push_back({dom_left, prev, Twist::half_turn});
    for (int k = 0; k < l; ++k) group.segments.push_back({0, 1 + k});
  }
  return group;
}

// ---------------------------------------------------------------------------
// SurfaceBuilder

int SurfaceBuilder::add_cylinder(std::vector<GaussianRational> vectors, const std::string& name) {
  return add_polar_part(make_polar_part_order2(std::move(vectors)), name);
}

int SurfaceBuilder::add_polygon(std::vector<GaussianRational> vectors) {
  surface_.pieces.push_back(Piece::polygon(std::move(vectors)));
  return (int)surface_.pieces.size() - 1;
}

int SurfaceBuilder::add_polar_part(const PieceGroup& group, const std::string& name) {
  int first = (int)surface_.pieces.size();
  for (const auto& piece : group.pieces) surface_.pieces.push_back(piece);
  for (const auto& g : group.internal_gluings)
    glue({g.a.piece + first, g.a.boundary_index}, {g.b.piece + first, g.b.boundary_index}, g.twist);
  PoleMark mark;
  mark.order = group.pole_order;
  mark.name = name;
  for (int i = 0; i < (int)group.pieces.size(); ++i) mark.pieces.push_back(first + i);
  surface_.pole_marks.push_back(mark);
  std::vector<EdgeRef> segs;
  for (const auto& e : group.segments) segs.push_back({e.piece + first, e.boundary_index});
  group_first_.push_back(first);
  group_segments_.push_back(segs);
  return first;
}

int SurfaceBuilder::add_marked_pieces(const std::vector<Piece>& pieces, int order,
                                      const std::string& name) {
  int first = (int)surface_.pieces.size();
  PoleMark mark;
  mark.order = order;
  mark.name = name;
  std::vector<EdgeRef> segs;
  for (const auto& piece : pieces) {
    surface_.pieces.push_back(piece);
    PieceLayout layout = layout_piece(piece);
    int id = (int)surface_.pieces.size() - 1;
    mark.pieces.push_back(id);
    for (int k = 0; k < layout.exposed_count; ++k)
      if (!layout.edge(layout.indexed_edges[k]).is_ray) segs.push_back({id, k});
  }
  surface_.pole_marks.push_back(mark);
  group_first_.push_back(first);
  group_segments_.push_back(segs);
  return first;
}

EdgeRef SurfaceBuilder::group_segment(int first, int k) const {
  for (size_t i = 0; i < group_first_.size(); ++i)
    if (group_first_[i] == first) {
      if (k < 0 || k >= (int)group_segments_[i].size())
        throw Error(ErrorCode::BadInput, "polar part has no segment " + std::to_string(k));
      return group_segments_[i][k];
    }
  throw Error(ErrorCode::BadInput, "no polar part starts at piece " + std::to_string(first));
}

void SurfaceBuilder::glue(EdgeRef a, EdgeRef b, Twist twist) {
  auto edge_of = [&](EdgeRef ref) -> CellEdge {
    if (ref.piece < 0 || ref.piece >= (int)surface_.pieces.size())
      throw Error(ErrorCode::BadInput, "gluing references a missing piece");
    PieceLayout layout = layout_piece(surface_.pieces[ref.piece]);
    if (ref.boundary_index < 0 || ref.boundary_index >= layout.exposed_count)
      throw Error(ErrorCode::BadInput, "gluing references a missing boundary edge");
    return layout.edge(layout.indexed_edges[ref.boundary_index]);
  };
  if (a == b) throw Error(ErrorCode::BadGluing, "an edge cannot be glued to itself");
  for (const auto& g : surface_.gluings)
    if (g.a == a || g.b == a || g.a == b || g.b == b)
      throw Error(ErrorCode::AlreadyGlued, "edge already glued");
  CellEdge ea = edge_of(a), eb = edge_of(b);
  if (ea.is_ray != eb.is_ray)
    throw Error(ErrorCode::BadGluing, "segments glue to segments, rays to rays");
  if (ea.is_ray) {
    if (ea.ray_in == eb.ray_in)
      throw Error(ErrorCode::BadGluing, "ray gluings pair an incoming ray with an outgoing one");
    GaussianRational da = ea.v, db = eb.v;
    bool ok = twist == Twist::translation ? (db == -da) : (db == da);
    if (!ok)
      throw Error(ErrorCode::VectorMismatch,
                  std::string("ray directions do not satisfy the ") + twist_name(twist) +
                      " convention: " + to_string(da) + " vs " + to_string(db));
  } else {
    bool ok = twist == Twist::translation ? (eb.v == -ea.v) : (eb.v == ea.v);
    if (!ok)
      throw Error(ErrorCode::VectorMismatch,
                  std::string("segment vectors do not satisfy the ") + twist_name(twist) +
                      " convention: " + to_string(ea.v) + " vs " + to_string(eb.v));
  }
  surface_.gluings.push_back({a, b, twist});
}

FlatSurface scale_surface(const FlatSurface& surface, const Rational& factor) {
  if (factor <= 0) throw Error(ErrorCode::BadInput, "scale factor must be positive");
  FlatSurface out = surface;
  for (auto& piece : out.pieces) {
    for (auto& v : piece.vectors) v = v * factor;
    for (auto& w : piece.lower_vectors) w = w * factor;
  }
  return out;
}

}  // namespace quadstrata
