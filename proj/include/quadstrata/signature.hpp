#pragma once

#include "quadstrata/rational.hpp"

#include <vector>

namespace quadstrata {

// Singularity data of a stratum: genus plus the multiset of orders.
// Pole orders are stored positive: an entry b in even_pole_orders means a
// pole of order -b (b even, b >= 4), an entry c in odd_pole_orders means
// order -c (c odd, c >= 3), and double_pole_count counts poles of order -2.
struct StratumSignature {
  int genus = 0;
  std::vector<int> zero_orders;       // each >= -1
  std::vector<int> even_pole_orders;  // each even, >= 4
  std::vector<int> odd_pole_orders;   // each odd, >= 3
  int double_pole_count = 0;

  int n() const { return (int)zero_orders.size(); }
  int p() const { return (int)even_pole_orders.size(); }
  int r() const { return (int)odd_pole_orders.size(); }
  int s() const { return double_pole_count; }

  int odd_zero_count() const;
  int even_zero_count() const;

  long order_sum() const;
  bool has_poles() const { return p() + r() + s() > 0; }

  bool operator==(const StratumSignature& o) const;
};

// Checks the degree condition and the legal ranges of all orders, and
// returns the signature in canonical order (descending, odd zero orders
// before even ones). forces_square is set when genus is 0 and every order
// is even: such strata contain only squares of abelian differentials.
struct ValidatedSignature {
  StratumSignature sig;
  int odd_zeros = 0;
  int even_zeros = 0;
  bool forces_square = false;
};

ValidatedSignature validate_signature(const StratumSignature& sig);

// Emptiness of holomorphic strata (no poles at all): exactly four primitive
// strata are empty.
bool stratum_nonempty_holomorphic(const StratumSignature& sig);

// Maximal number of disjoint cylinders on a primitive differential of a
// nonempty holomorphic stratum: g + (even zeros) + (odd zeros)/2 - 1.
long max_disjoint_cylinders(const StratumSignature& sig);

// Quadratic residues presented through chosen square roots: the residue at
// an even pole j is even_pole_roots[j]^2 (zero allowed), at a double pole
// k it is double_pole_roots[k]^2 (zero forbidden).
struct RootedResidueConfig {
  std::vector<GaussianRational> even_pole_roots;
  std::vector<GaussianRational> double_pole_roots;

  std::vector<GaussianRational> even_pole_residues() const;
  std::vector<GaussianRational> double_pole_residues() const;
  std::vector<GaussianRational> all_residues() const;
};

// Checks lengths against the signature and nonvanishing of double-pole roots.
void validate_config(const StratumSignature& sig, const RootedResidueConfig& config);

// Scales so that the first nonzero residue becomes 1 (exact division by a
// residue, i.e. by the square of its root). Identity on the zero config.
RootedResidueConfig normalize_by_first_nonzero(const RootedResidueConfig& config);

// Component of a stratum: the whole stratum, or for genus 1 the connected
// component with a given rotation number (odd for primitive components).
struct ComponentSelector {
  bool whole_stratum = true;
  int rotation_number = 0;

  static ComponentSelector whole() { return {}; }
  static ComponentSelector rotation(int rho) { return {false, rho}; }
};

// Legal rotation numbers of primitive genus-1 components: odd divisors of
// gcd of all singularity orders; strict divisors when the stratum has a
// single zero and a single pole.
std::vector<int> legal_rotation_numbers(const StratumSignature& sig);

void validate_component(const StratumSignature& sig, const ComponentSelector& comp);

}  // namespace quadstrata
