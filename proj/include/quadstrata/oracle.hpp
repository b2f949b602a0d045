#pragma once

#include "quadstrata/signature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quadstrata {

enum class VerdictStatus { Realizable, NotRealizable, RealizableNoWitness };

enum class ObstructionKind {
  Origin,
  Crosse,
  Triangular,
  ArithmeticOddSum,
  ArithmeticEvenSum,
  ExceptionalComponent,
  ProportionalAllOnes,
  SpecialFamily,
};

const char* obstruction_kind_name(ObstructionKind kind);

struct Obstruction {
  ObstructionKind kind = ObstructionKind::SpecialFamily;
  std::string family;  // detail for SpecialFamily-style obstructions
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Realizable;
  std::optional<Obstruction> obstruction;
  std::string citation;

  bool realizable() const { return status != VerdictStatus::NotRealizable; }
};

// Three residues are triangular when some choice of square roots sums to
// zero; equivalently R1^2+R2^2+R3^2 = 2(R1R2+R1R3+R2R3).
bool is_triangular(const GaussianRational& R1, const GaussianRational& R2,
                   const GaussianRational& R3);

// Cross-validation oracle: enumerates the sign choices of supplied roots.
bool is_triangular_rooted(const GaussianRational& r1, const GaussianRational& r2,
                          const GaussianRational& r3);

// Residue tuples proportional to (1,...,1,R,R) with all entries nonzero
// (all-equal tuples qualify; the pattern is taken literally).
bool is_crosse(const std::vector<GaussianRational>& residues);

// If all pairwise ratios are squares of positive rationals, the unique
// coprime positive integer root vector, plus the parity of its sum.
struct ArithmeticForm {
  std::vector<Int> roots;
  bool sum_is_odd = false;
  long sum = 0;
};
std::optional<ArithmeticForm> arithmetic_normal_form(const std::vector<GaussianRational>& residues);

// The full classification: decides whether the rooted configuration is in
// the image of the residue map of the selected component, and names the
// governing statement. Realizable cases that the construction catalog does
// not cover are reported as RealizableNoWitness.
Verdict decide(const StratumSignature& sig, const RootedResidueConfig& config,
               const ComponentSelector& component = ComponentSelector::whole());

}  // namespace quadstrata
