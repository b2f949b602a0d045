#pragma once

#include "quadstrata/signature.hpp"
#include "quadstrata/surface.hpp"

#include <map>
#include <vector>

namespace quadstrata {

// Local invariants recomputed from the flat structure alone.
struct LocalInvariants {
  int genus = 0;  // from the Euler characteristic; meaningful when connected
  std::vector<int> zero_orders;  // cone angles (a+2)pi, canonical order
  std::vector<int> pole_orders;  // negative orders, descending (-2 before -3 ...)
  std::map<int, GaussianRational> residues;  // pole-mark index -> quadratic residue
  bool connected = true;
  bool primitive = false;

  // The corresponding stratum signature (genus + orders).
  StratumSignature signature() const;
  std::vector<GaussianRational> residue_multiset() const;

  bool operator==(const LocalInvariants& o) const;
};

// Recomputes all local invariants of a fully glued surface:
// vertex classes and exact cone angles, pole orders and residues checked
// against the pole marks, connectivity, genus via the Euler characteristic
// of the compactified complex, and primitivity via the holonomy 2-coloring.
LocalInvariants verify(const FlatSurface& surface);

// One step of a closed path of saddle connections: traverse a segment edge
// forward (along its own piece's boundary orientation), then sweep `sectors`
// consecutive corners on the left at the vertex the edge runs into. The
// out-edge of the last swept corner is the edge the next step traverses.
// `edge` uses the extended boundary indexing of the piece layout.
// Traversing a saddle connection backward is expressed by traversing the
// glued twin edge forward.
struct LoopStep {
  int piece = 0;
  int edge = 0;
  int sectors = 1;
};

// Index of the Gauss map of the loop smoothed on its left side: the total
// turning divided by pi, exact. Throws NotClosed on paths that do not chain
// up or do not return to the start.
long loop_index(const FlatSurface& surface, const std::vector<LoopStep>& loop);

// Corner cycles of the finite vertices, in vertex-walk order. Each corner
// names its incoming and outgoing edge in the extended boundary indexing of
// its piece. Used to assemble loop certificates.
struct WalkCorner {
  int piece = 0;
  int in_edge = 0;
  int out_edge = 0;
};
std::vector<std::vector<WalkCorner>> vertex_corner_cycles(const FlatSurface& surface);

}  // namespace quadstrata
