#include "quadstrata/verify.hpp"

#include "quadstrata/layout.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace quadstrata {

StratumSignature LocalInvariants::signature() const {
  StratumSignature sig;
  sig.genus = genus;
  sig.zero_orders = zero_orders;
  for (int o : pole_orders) {
    if (o == -2)
      ++sig.double_pole_count;
    else if ((-o) % 2 == 0)
      sig.even_pole_orders.push_back(-o);
    else
      sig.odd_pole_orders.push_back(-o);
  }
  std::sort(sig.even_pole_orders.rbegin(), sig.even_pole_orders.rend());
  std::sort(sig.odd_pole_orders.rbegin(), sig.odd_pole_orders.rend());
  return sig;
}

std::vector<GaussianRational> LocalInvariants::residue_multiset() const {
  std::vector<GaussianRational> out;
  for (const auto& [mark, value] : residues) out.push_back(value);
  std::sort(out.begin(), out.end());
  return out;
}

bool LocalInvariants::operator==(const LocalInvariants& o) const {
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return genus == o.genus && connected == o.connected && primitive == o.primitive &&
         sorted(zero_orders) == sorted(o.zero_orders) &&
         sorted(pole_orders) == sorted(o.pole_orders) && residues == o.residues;
}

namespace {

struct Expanded {
  std::vector<PieceLayout> layouts;           // per piece
  std::vector<std::pair<int, int>> cells;     // global cell -> (piece, local cell)
  std::vector<int> cell_offset;               // global cell -> first global edge id
  std::vector<int> cell_of_piece_first;       // piece -> first global cell
  int edge_count = 0;

  int global_cell(int piece, int local_cell) const { return cell_of_piece_first[piece] + local_cell; }
  int edge_id(int piece, EdgeId e) const { return cell_offset[global_cell(piece, e.cell)] + e.pos; }
  const Cell& cell(int gc) const;
};

struct EdgeInfo {
  int piece = 0;
  int global_cell = 0;
  int pos = 0;
  const CellEdge* edge = nullptr;
};

struct Resolved {
  Expanded ex;
  std::vector<EdgeInfo> edges;       // by global edge id
  std::vector<int> partner;          // global edge id -> glued edge id (-1 free)
  std::vector<Twist> twist;          // valid where partner >= 0
};

Expanded expand(const FlatSurface& surface) {
  Expanded ex;
  ex.layouts.reserve(surface.pieces.size());
  for (const auto& piece : surface.pieces) ex.layouts.push_back(layout_piece(piece));
  for (int p = 0; p < (int)surface.pieces.size(); ++p) {
    ex.cell_of_piece_first.push_back((int)ex.cells.size());
    for (int c = 0; c < (int)ex.layouts[p].cells.size(); ++c) {
      ex.cell_offset.push_back(ex.edge_count);
      ex.edge_count += (int)ex.layouts[p].cells[c].edges.size();
      ex.cells.push_back({p, c});
    }
  }
  return ex;
}

const Cell& cell_of(const Expanded& ex, int gc) {
  auto [piece, local] = ex.cells[gc];
  return ex.layouts[piece].cells[local];
}

Resolved resolve(const FlatSurface& surface) {
  Resolved r{expand(surface), {}, {}, {}};
  const Expanded& ex = r.ex;
  r.edges.resize(ex.edge_count);
  r.partner.assign(ex.edge_count, -1);
  r.twist.assign(ex.edge_count, Twist::translation);
  for (int gc = 0; gc < (int)ex.cells.size(); ++gc) {
    auto [piece, local] = ex.cells[gc];
    const Cell& cell = ex.layouts[piece].cells[local];
    for (int pos = 0; pos < (int)cell.edges.size(); ++pos)
      r.edges[ex.cell_offset[gc] + pos] = {piece, gc, pos, &cell.edges[pos]};
  }

  auto set_partner = [&](int a, int b, Twist t, bool internal) {
    if (a == b) throw Error(ErrorCode::BadGluing, "an edge cannot be glued to itself");
    if (r.partner[a] != -1 || r.partner[b] != -1)
      throw Error(ErrorCode::AlreadyGlued, "edge glued twice");
    const CellEdge* ea = r.edges[a].edge;
    const CellEdge* eb = r.edges[b].edge;
    if (ea->is_ray != eb->is_ray)
      throw Error(ErrorCode::BadGluing, "segments glue to segments, rays to rays");
    if (ea->is_ray) {
      if (ea->ray_in == eb->ray_in)
        throw Error(ErrorCode::BadGluing, "ray gluings pair an incoming ray with an outgoing one");
      bool ok = t == Twist::translation ? (eb->v == -ea->v) : (eb->v == ea->v);
      if (!ok) throw Error(ErrorCode::VectorMismatch, "ray directions violate the gluing convention");
    } else {
      if (internal) throw Error(ErrorCode::BadGluing, "internal gluings are ray gluings");
      bool ok = t == Twist::translation ? (eb->v == -ea->v) : (eb->v == ea->v);
      if (!ok)
        throw Error(ErrorCode::VectorMismatch,
                    "segment vectors violate the gluing convention: " + to_string(ea->v) + " / " +
                        to_string(eb->v) + " under " + twist_name(t));
    }
    r.partner[a] = b;
    r.partner[b] = a;
    r.twist[a] = t;
    r.twist[b] = t;
  };

  for (int p = 0; p < (int)surface.pieces.size(); ++p)
    for (const auto& [ea, eb] : ex.layouts[p].internal_gluings)
      set_partner(ex.edge_id(p, ea), ex.edge_id(p, eb), Twist::translation, true);

  for (const auto& g : surface.gluings) {
    auto resolve_ref = [&](EdgeRef ref) {
      if (ref.piece < 0 || ref.piece >= (int)surface.pieces.size())
        throw Error(ErrorCode::BadInput, "gluing references a missing piece");
      const PieceLayout& layout = ex.layouts[ref.piece];
      if (ref.boundary_index < 0 || ref.boundary_index >= layout.exposed_count)
        throw Error(ErrorCode::BadInput, "gluing references a missing boundary edge");
      return ex.edge_id(ref.piece, layout.indexed_edges[ref.boundary_index]);
    };
    set_partner(resolve_ref(g.a), resolve_ref(g.b), g.twist, false);
  }

  for (int e = 0; e < ex.edge_count; ++e)
    if (r.partner[e] == -1)
      throw Error(ErrorCode::FreeEdge, "surface has an unglued boundary edge");
  return r;
}

// Union-find with parity (for the holonomy coloring).
struct ParityDsu {
  std::vector<int> parent, rank_;
  std::vector<int> parity;  // parity relative to parent
  bool contradiction = false;

  explicit ParityDsu(int n) : parent(n), rank_(n, 0), parity(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, 0};
    auto [root, par] = find(parent[x]);
    parent[x] = root;
    parity[x] ^= par;
    return {root, parity[x]};
  }
  void unite(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb) != rel) contradiction = true;
      return;
    }
    if (rank_[ra] < rank_[rb]) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent[rb] = ra;
    parity[rb] = pa ^ pb ^ rel;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
  }
};

struct CornerRef {
  int global_cell = 0;
  int index = 0;  // corner between edges index and index+1 (mod size for cyclic)
};

}  // namespace

LocalInvariants verify(const FlatSurface& surface) {
  if (surface.pieces.empty()) throw Error(ErrorCode::BadInput, "empty surface");
  Resolved r = resolve(surface);
  const Expanded& ex = r.ex;

  // --- corners ---------------------------------------------------------
  // corner id: per cell, between edge[i] and edge[i+1 (mod n)].
  std::vector<std::pair<int, int>> corners;              // (global cell, i)
  std::vector<int> corner_offset(ex.cells.size(), -1);   // first corner id of cell
  std::vector<int> corner_after_edge(ex.edge_count, -1); // edge -> corner with that incoming edge
  for (int gc = 0; gc < (int)ex.cells.size(); ++gc) {
    const Cell& cell = cell_of(ex, gc);
    corner_offset[gc] = (int)corners.size();
    int n = (int)cell.edges.size();
    int count = cell.cyclic ? n : n - 1;
    for (int i = 0; i < count; ++i) {
      corner_after_edge[ex.cell_offset[gc] + i] = (int)corners.size();
      corners.push_back({gc, i});
    }
  }

  auto corner_in_edge = [&](int c) {
    auto [gc, i] = corners[c];
    return ex.cell_offset[gc] + i;
  };
  auto corner_out_edge = [&](int c) {
    auto [gc, i] = corners[c];
    const Cell& cell = cell_of(ex, gc);
    return ex.cell_offset[gc] + (i + 1) % (int)cell.edges.size();
  };

  // Walk around each vertex: crossing the outgoing edge lands on the corner
  // that has the glued partner as its incoming edge.
  auto next_corner = [&](int c) {
    int out = corner_out_edge(c);
    int partner = r.partner[out];
    int nxt = corner_after_edge[partner];
    if (nxt < 0) throw Error(ErrorCode::BadGluing, "vertex walk crossed an outgoing ray");
    return nxt;
  };

  std::vector<int> vertex_of(corners.size(), -1);
  std::vector<long> vertex_angle;  // in units of pi
  for (int c0 = 0; c0 < (int)corners.size(); ++c0) {
    if (vertex_of[c0] != -1) continue;
    int v = (int)vertex_angle.size();
    TurningAccumulator acc;
    long corner_count = 0;
    int c = c0;
    do {
      vertex_of[c] = v;
      const CellEdge& in = *r.edges[corner_in_edge(c)].edge;
      const CellEdge& out = *r.edges[corner_out_edge(c)].edge;
      GaussianRational a = out.v * in.v.conj();
      if (a.im == 0 && a.re < 0) acc.add_half_turns(-2);  // slit corner: angle 2*pi
      acc.add(a);
      ++corner_count;
      c = next_corner(c);
    } while (c != c0);
    vertex_angle.push_back(corner_count - acc.total_half_turns());
  }

  LocalInvariants out;
  for (long angle : vertex_angle) {
    if (angle <= 0) throw Error(ErrorCode::NonIntegerAngle, "nonpositive cone angle");
    out.zero_orders.push_back((int)(angle - 2));
  }
  std::stable_sort(out.zero_orders.begin(), out.zero_orders.end(), [](int a, int b) {
    bool ao = a % 2 != 0, bo = b % 2 != 0;
    if (ao != bo) return ao;
    return a > b;
  });

  // --- pole marks -------------------------------------------------------
  std::vector<int> mark_of_piece(surface.pieces.size(), -1);
  for (int m = 0; m < (int)surface.pole_marks.size(); ++m) {
    for (int piece : surface.pole_marks[m].pieces) {
      if (piece < 0 || piece >= (int)surface.pieces.size())
        throw Error(ErrorCode::BadPoleMark, "pole mark references a missing piece");
      if (surface.pieces[piece].kind == PieceKind::polygon)
        throw Error(ErrorCode::BadPoleMark, "polygons carry no pole");
      if (mark_of_piece[piece] != -1)
        throw Error(ErrorCode::BadPoleMark, "piece belongs to two polar parts");
      mark_of_piece[piece] = m;
    }
  }
  for (int p = 0; p < (int)surface.pieces.size(); ++p)
    if (surface.pieces[p].kind != PieceKind::polygon && mark_of_piece[p] == -1)
      throw Error(ErrorCode::BadPoleMark, "piece with boundary rays belongs to no polar part");

  int polygon_cells = 0;
  for (const auto& piece : surface.pieces)
    if (piece.kind == PieceKind::polygon) ++polygon_cells;

  for (int m = 0; m < (int)surface.pole_marks.size(); ++m) {
    const PoleMark& mark = surface.pole_marks[m];
    std::vector<int> member_cells;
    for (int piece : mark.pieces)
      for (int c = 0; c < (int)ex.layouts[piece].cells.size(); ++c)
        member_cells.push_back(ex.global_cell(piece, c));
    int half_turn_rays = 0;
    int ray_pairs = 0;
    // ray-gluing graph on member cells must be connected (a single cycle).
    std::vector<int> comp(member_cells.size());
    std::iota(comp.begin(), comp.end(), 0);
    auto local_index = [&](int gc) {
      for (int i = 0; i < (int)member_cells.size(); ++i)
        if (member_cells[i] == gc) return i;
      return -1;
    };
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int i = 0; i < (int)member_cells.size(); ++i) {
      int gc = member_cells[i];
      const Cell& cell = cell_of(ex, gc);
      for (int pos = 0; pos < (int)cell.edges.size(); ++pos) {
        if (!cell.edges[pos].is_ray) continue;
        int e = ex.cell_offset[gc] + pos;
        int other = r.partner[e];
        int oi = local_index(r.edges[other].global_cell);
        if (oi < 0)
          throw Error(ErrorCode::BadPoleMark, "polar part ray glued outside the part");
        if (e < other) {
          ++ray_pairs;
          if (r.twist[e] == Twist::half_turn) ++half_turn_rays;
        }
        comp[find(i)] = find(oi);
      }
    }
    int roots = 0;
    for (int i = 0; i < (int)member_cells.size(); ++i)
      if (find(i) == i) ++roots;
    if (roots != 1) throw Error(ErrorCode::BadPoleMark, "polar part does not form a single ray cycle");

    int b = mark.order;
    if (b == 2) {
      if (member_cells.size() != 1 || surface.pieces[mark.pieces[0]].kind != PieceKind::cylinder_end)
        throw Error(ErrorCode::BadPoleMark, "an order-2 polar part is a single cylinder end");
      if (half_turn_rays != 0) throw Error(ErrorCode::BadPoleMark, "cylinder rays glue by translation");
    } else if (b >= 3) {
      if ((int)member_cells.size() != b - 2)
        throw Error(ErrorCode::BadPoleMark,
                    "a pole of order -" + std::to_string(b) + " needs " + std::to_string(b - 2) +
                        " half-plane cells, found " + std::to_string(member_cells.size()));
      int expected = b % 2 == 0 ? 0 : 1;
      if (half_turn_rays != expected)
        throw Error(ErrorCode::BadPoleMark, "polar part twist pattern does not match its order parity");
      (void)ray_pairs;
    } else {
      throw Error(ErrorCode::BadPoleMark, "pole order must be >= 2");
    }

    out.pole_orders.push_back(-b);
    if (b % 2 == 0) {
      GaussianRational root;
      for (int gc : member_cells) {
        const Cell& cell = cell_of(ex, gc);
        for (const auto& e : cell.edges)
          if (!e.is_ray) root = root + e.v;
      }
      out.residues[m] = root.square();
    }
  }
  std::sort(out.pole_orders.rbegin(), out.pole_orders.rend());

  // --- connectivity, holonomy, Euler characteristic ---------------------
  ParityDsu dsu((int)ex.cells.size());
  int seg_pairs = 0;
  for (int e = 0; e < ex.edge_count; ++e) {
    int other = r.partner[e];
    if (other < e) continue;
    if (!r.edges[e].edge->is_ray) ++seg_pairs;
    dsu.unite(r.edges[e].global_cell, r.edges[other].global_cell,
              r.twist[e] == Twist::half_turn ? 1 : 0);
  }
  int components = 0;
  for (int gc = 0; gc < (int)ex.cells.size(); ++gc)
    if (dsu.find(gc).first == gc) ++components;
  out.connected = components == 1;
  out.primitive = dsu.contradiction;

  long chi = (long)vertex_angle.size() + (long)surface.pole_marks.size() - seg_pairs + polygon_cells;
  if ((chi % 2 + 2) % 2 != 0) throw Error(ErrorCode::BadInput, "odd Euler characteristic");
  out.genus = (int)((2 - chi) / 2);
  return out;
}

std::vector<std::vector<WalkCorner>> vertex_corner_cycles(const FlatSurface& surface) {
  Resolved r = resolve(surface);
  const Expanded& ex = r.ex;
  // Reverse map: global edge id -> extended boundary index of its piece.
  std::vector<int> extended_index(ex.edge_count, -1);
  for (int p = 0; p < (int)surface.pieces.size(); ++p)
    for (int k = 0; k < (int)ex.layouts[p].indexed_edges.size(); ++k)
      extended_index[ex.edge_id(p, ex.layouts[p].indexed_edges[k])] = k;

  std::vector<std::pair<int, int>> corners;
  std::vector<int> corner_after_edge(ex.edge_count, -1);
  for (int gc = 0; gc < (int)ex.cells.size(); ++gc) {
    const Cell& cell = cell_of(ex, gc);
    int n = (int)cell.edges.size();
    int count = cell.cyclic ? n : n - 1;
    for (int i = 0; i < count; ++i) {
      corner_after_edge[ex.cell_offset[gc] + i] = (int)corners.size();
      corners.push_back({gc, i});
    }
  }
  auto corner_edges = [&](int c) {
    auto [gc, i] = corners[c];
    const Cell& cell = cell_of(ex, gc);
    int in = ex.cell_offset[gc] + i;
    int out = ex.cell_offset[gc] + (i + 1) % (int)cell.edges.size();
    return std::pair(in, out);
  };

  std::vector<std::vector<WalkCorner>> cycles;
  std::vector<bool> seen(corners.size(), false);
  for (int c0 = 0; c0 < (int)corners.size(); ++c0) {
    if (seen[c0]) continue;
    std::vector<WalkCorner> cycle;
    int c = c0;
    do {
      seen[c] = true;
      auto [in, out] = corner_edges(c);
      cycle.push_back({r.edges[in].piece, extended_index[in], extended_index[out]});
      int partner = r.partner[out];
      c = corner_after_edge[partner];
      if (c < 0) throw Error(ErrorCode::BadGluing, "vertex walk crossed an outgoing ray");
    } while (c != c0);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

// ---------------------------------------------------------------------------
// Loop index

long loop_index(const FlatSurface& surface, const std::vector<LoopStep>& loop) {
  if (loop.empty()) throw Error(ErrorCode::NotClosed, "empty loop");
  Resolved r = resolve(surface);
  const Expanded& ex = r.ex;

  // Corner tables, as in verify().
  std::vector<std::pair<int, int>> corners;
  std::vector<int> corner_after_edge(ex.edge_count, -1);
  for (int gc = 0; gc < (int)ex.cells.size(); ++gc) {
    const Cell& cell = cell_of(ex, gc);
    int n = (int)cell.edges.size();
    int count = cell.cyclic ? n : n - 1;
    for (int i = 0; i < count; ++i) {
      corner_after_edge[ex.cell_offset[gc] + i] = (int)corners.size();
      corners.push_back({gc, i});
    }
  }
  auto corner_out_edge = [&](int c) {
    auto [gc, i] = corners[c];
    const Cell& cell = cell_of(ex, gc);
    return ex.cell_offset[gc] + (i + 1) % (int)cell.edges.size();
  };

  auto resolve_step_edge = [&](const LoopStep& step) {
    if (step.piece < 0 || step.piece >= (int)surface.pieces.size())
      throw Error(ErrorCode::NotClosed, "loop references a missing piece");
    const PieceLayout& layout = ex.layouts[step.piece];
    if (step.edge < 0 || step.edge >= (int)layout.indexed_edges.size())
      throw Error(ErrorCode::NotClosed, "loop references a missing edge");
    int edge = ex.edge_id(step.piece, layout.indexed_edges[step.edge]);
    if (r.edges[edge].edge->is_ray)
      throw Error(ErrorCode::NotClosed, "loops traverse segments, not rays");
    return edge;
  };

  // Turning = sum over steps of (pi - sum of swept corner angles); each
  // corner angle is pi - turn(in, out), accumulated exactly.
  TurningAccumulator acc;
  long half_turns = 0;
  int n = (int)loop.size();
  for (int i = 0; i < n; ++i) {
    int edge = resolve_step_edge(loop[i]);
    int next_edge = resolve_step_edge(loop[(i + 1) % n]);
    if (loop[i].sectors < 1) throw Error(ErrorCode::NotClosed, "each step sweeps at least one corner");
    half_turns += 1;  // the +pi of this junction
    int c = corner_after_edge[edge];
    if (c < 0) throw Error(ErrorCode::NotClosed, "edge has no corner at its head");
    int out = -1;
    for (int k = 0; k < loop[i].sectors; ++k) {
      const CellEdge& in_e = *r.edges[ex.cell_offset[corners[c].first] + corners[c].second].edge;
      out = corner_out_edge(c);
      const CellEdge& out_e = *r.edges[out].edge;
      // Subtract the corner angle pi - turn: contributes -pi + turn.
      GaussianRational a = out_e.v * in_e.v.conj();
      if (a.im == 0 && a.re < 0) acc.add_half_turns(-2);  // slit corner
      acc.add(a);
      half_turns -= 1;
      if (k + 1 < loop[i].sectors) {
        int partner = r.partner[out];
        c = corner_after_edge[partner];
        if (c < 0) throw Error(ErrorCode::NotClosed, "corner sweep crossed an outgoing ray");
      }
    }
    if (out != next_edge)
      throw Error(ErrorCode::NotClosed, "loop does not continue along the swept corner's out-edge");
  }
  return half_turns + acc.total_half_turns();
}

}  // namespace quadstrata
