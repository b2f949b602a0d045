#pragma once

#include "quadstrata/search.hpp"
#include "quadstrata/signature.hpp"
#include "quadstrata/surface.hpp"
#include "quadstrata/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quadstrata {

// A constructed flat surface together with the invariants the recipe claims
// for it. The round-trip property of the whole suite is
// verify(witness.surface) == witness.claimed, exactly.
struct Witness {
  FlatSurface surface;
  LocalInvariants claimed;
  std::string recipe;
  // Genus-1 certificates: a pair of loops whose Gauss-map indices enter the
  // rotation number gcd. Empty in genus 0.
  int rotation_number = 0;
  std::vector<LoopStep> alpha, beta;
  long alpha_index = 0, beta_index = 0;
};

// Doubled-edge polygon construction for Q_0(a1,a2;(-2^s)): an (s+2)-gon with
// edges v, E1, v, E2 (E1 the first e1 signed roots), a half-infinite cylinder
// on each root edge, and the two v edges glued by a half turn.
// Requires e1 = (a1+1)/2 and closure 2v + sum(roots) = 0.
Witness construct_cc(int a1, int a2, const std::vector<GaussianRational>& signed_roots, int e1,
                     const GaussianRational& v);

// Searches sign choices and splits for a CC polygon realizing the
// configuration; nullopt when every candidate degenerates.
std::optional<Witness> plan_cc(const StratumSignature& sig, const RootedResidueConfig& config);

// Single-zero genus-0 strata with odd poles: the chained-trivial-parts
// recipe for the all-zero configuration (needs r >= 2), and the collector
// recipe carrying (1^{r-1}, roots of the nonzero residues) otherwise.
Witness construct_genus0_odd_pole(const StratumSignature& sig, const RootedResidueConfig& config);

// Assembles a cylinder-chain plan for Q_0(a1,a2;(-2^s)) with integer roots;
// lengths are solved exactly (InfeasibleLengths when no positive solution).
Witness construct_cylinder_chain(const StratumSignature& sig, const std::vector<long>& roots,
                                 const CylinderChainPlan& plan);

// Genus-1 single-zero strata (2l;-2l) and (a;-b_1..-b_p;(-2^s)): polar-part
// cores with doubled boundary segments, plus rotation-number certificates.
Witness construct_genus1_single_zero(const StratumSignature& sig,
                                     const RootedResidueConfig& config,
                                     const ComponentSelector& comp = ComponentSelector::whole());

// Recipe dispatcher (precedence: CC, cylinder chains, the others). Throws
// ObstructedConfiguration when the oracle rejects the configuration and
// UnsupportedCase when no recipe covers it.
Witness construct(const StratumSignature& sig, const RootedResidueConfig& config,
                  const ComponentSelector& comp = ComponentSelector::whole());

// Attempts construction without consulting the oracle; nullopt when the
// catalog has no recipe for the case. decide() uses this as the coverage
// predicate behind RealizableNoWitness.
std::optional<Witness> try_construct(const StratumSignature& sig,
                                     const RootedResidueConfig& config,
                                     const ComponentSelector& comp = ComponentSelector::whole());

bool witness_covered(const StratumSignature& sig, const RootedResidueConfig& config,
                     const ComponentSelector& comp);

// Rotation number of a single-zero genus-1 surface: gcd of the singularity
// orders and the Gauss indices of a symplectic pair of saddle-connection
// loops, found through the corner cycle. Fills rotation_number, alpha, beta.
void attach_rotation_certificate(Witness& witness);

}  // namespace quadstrata
