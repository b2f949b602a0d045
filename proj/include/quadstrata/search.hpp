#pragma once

#include "quadstrata/signature.hpp"
#include "quadstrata/surface.hpp"
#include "quadstrata/verify.hpp"

#include <optional>
#include <vector>

namespace quadstrata {

// Incidence-graph description of a fully horizontal surface built from s
// half-infinite cylinders: vertex i is the cylinder of circumference r_i,
// `slots` lists the saddle connections around its boundary in walk order
// (each edge id appears exactly twice overall), and `orientation` records
// the up/down class of each cylinder. Edges between cylinders of the same
// orientation are glued by a half turn, others by translation.
struct CylinderChainPlan {
  int edge_count = 0;
  std::vector<std::vector<int>> slots;
  std::vector<int> orientation;

  int vertex_count() const { return (int)slots.size(); }
};

void validate_plan(const CylinderChainPlan& plan);

// Edges of the unique cycle of a connected unicyclic plan.
std::vector<bool> plan_cycle_edges(const CylinderChainPlan& plan);

// Solves the per-cylinder boundary-length system exactly over Q; returns
// strictly positive saddle-connection lengths or nullopt. Singular but
// consistent systems pick a deterministic point of the feasible interval.
std::optional<std::vector<Rational>> solve_plan_lengths(const CylinderChainPlan& plan,
                                                        const std::vector<long>& roots);

FlatSurface assemble_plan(const CylinderChainPlan& plan, const std::vector<Rational>& lengths);

struct SearchWitness {
  CylinderChainPlan plan;
  std::vector<Rational> lengths;
  std::vector<bool> on_cycle;
  FlatSurface surface;
  LocalInvariants invariants;
};

// Enumerates all incidence-graph normal forms of Q_0(a1,a2;(-2^s)) with the
// given positive integer roots: all connected unicyclic plans, solved
// exactly, kept when the lengths are positive, the cone angles match the
// two zero orders and the holonomy is nontrivial. Every emitted witness is
// re-verified from its flat structure.
std::vector<SearchWitness> enumerate_normal_forms(const StratumSignature& sig,
                                                  const std::vector<long>& roots, int budget = 7,
                                                  bool first_only = false);

// Lemma on arithmetic configurations: with coprime integer roots, even root
// sum forces integer saddle lengths; odd root sum forces half-integers on
// the cycle and integers on the trees. Throws PropertyViolated if the
// witness falsifies it.
void check_half_integer_lengths(const SearchWitness& witness, const std::vector<long>& roots);

}  // namespace quadstrata
