#pragma once

#include "quadstrata/surface.hpp"

namespace quadstrata {

// Expansion of a piece into half-plane cells with exact planar coordinates.
// Verification, loop indices and rendering all work on this view.

struct CellEdge {
  bool is_ray = false;
  bool ray_in = false;           // rays: traversed from infinity toward the finite end
  GaussianRational v;            // segment vector, or primitive ray travel direction
  GaussianRational finite_point; // segment start; ray_in: finite end; ray_out: finite start
  bool hidden = false;           // interior fold rays (not part of the exposed boundary)

  GaussianRational segment_end() const { return finite_point + v; }
};

struct Cell {
  std::vector<CellEdge> edges;
  bool cyclic = false;  // polygons: corner between last and first edge
};

struct EdgeId {
  int cell = 0;
  int pos = 0;
  bool operator==(const EdgeId& o) const { return cell == o.cell && pos == o.pos; }
};

struct PieceLayout {
  std::vector<Cell> cells;
  // Hidden ray pairs glued by translation inside the piece.
  std::vector<std::pair<EdgeId, EdgeId>> internal_gluings;
  // Extended boundary indexing: exposed edges first (the EdgeRef order
  // documented in surface.hpp), then hidden rays.
  std::vector<EdgeId> indexed_edges;
  int exposed_count = 0;

  const CellEdge& edge(EdgeId id) const { return cells[id.cell].edges[id.pos]; }
};

// Expands and validates a piece; throws SelfIntersection / DegeneratePolygon /
// BadInput on malformed data.
PieceLayout layout_piece(const Piece& piece);

// Exact intersection helpers over the rationals.
struct LineElement {
  GaussianRational origin;
  GaussianRational dir;   // nonzero
  bool bounded = true;    // bounded: parameter in [0,1]; else [0, infinity)
};

bool elements_intersect(const LineElement& a, const LineElement& b);

}  // namespace quadstrata
