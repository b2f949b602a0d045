#include "quadstrata/oracle.hpp"

#include "quadstrata/constructors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace quadstrata {

const char* obstruction_kind_name(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::Origin: return "Origin";
    case ObstructionKind::Crosse: return "Crosse";
    case ObstructionKind::Triangular: return "Triangular";
    case ObstructionKind::ArithmeticOddSum: return "ArithmeticOddSum";
    case ObstructionKind::ArithmeticEvenSum: return "ArithmeticEvenSum";
    case ObstructionKind::ExceptionalComponent: return "ExceptionalComponent";
    case ObstructionKind::ProportionalAllOnes: return "ProportionalAllOnes";
    case ObstructionKind::SpecialFamily: return "SpecialFamily";
  }
  return "?";
}

bool is_triangular(const GaussianRational& R1, const GaussianRational& R2,
                   const GaussianRational& R3) {
  GaussianRational lhs = R1.square() + R2.square() + R3.square();
  GaussianRational rhs = (R1 * R2 + R1 * R3 + R2 * R3) * Rational(2);
  return lhs == rhs;
}

bool is_triangular_rooted(const GaussianRational& r1, const GaussianRational& r2,
                          const GaussianRational& r3) {
  for (int s2 : {1, -1})
    for (int s3 : {1, -1}) {
      GaussianRational sum = r1 + r2 * Rational(s2) + r3 * Rational(s3);
      if (sum.is_zero()) return true;
    }
  return false;
}

bool is_crosse(const std::vector<GaussianRational>& residues) {
  int s = (int)residues.size();
  if (s < 2) return false;
  for (const auto& R : residues)
    if (R.is_zero()) return false;
  if (s == 2) return residues[0] == residues[1];
  std::vector<GaussianRational> distinct;
  for (const auto& R : residues)
    if (std::find(distinct.begin(), distinct.end(), R) == distinct.end()) distinct.push_back(R);
  for (const auto& A : distinct) {
    int count = 0;
    std::vector<GaussianRational> rest;
    for (const auto& R : residues)
      if (R == A && count < s - 2)
        ++count;
      else
        rest.push_back(R);
    if (count == s - 2 && rest.size() == 2 && rest[0] == rest[1]) return true;
  }
  return false;
}

std::optional<ArithmeticForm> arithmetic_normal_form(const std::vector<GaussianRational>& residues) {
  if (residues.empty()) return std::nullopt;
  for (const auto& R : residues)
    if (R.is_zero()) return std::nullopt;
  std::vector<Rational> root_ratios;
  for (const auto& R : residues) {
    GaussianRational ratio = R / residues[0];
    if (ratio.im != 0 || ratio.re <= 0) return std::nullopt;
    auto root = rational_sqrt(ratio.re);
    if (!root) return std::nullopt;
    root_ratios.push_back(*root);
  }
  Int lcm_den = 1;
  for (const auto& q : root_ratios)
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(q));
  std::vector<Int> roots;
  Int g = 0;
  for (const auto& q : root_ratios) {
    Int n = numerator(q) * (lcm_den / denominator(q));
    roots.push_back(n);
    g = boost::multiprecision::gcd(g, n);
  }
  for (auto& n : roots) n /= g;
  ArithmeticForm out;
  out.roots = roots;
  Int sum = 0;
  for (const auto& n : roots) sum += n;
  out.sum = sum.convert_to<long>();
  out.sum_is_odd = out.sum % 2 != 0;
  return out;
}

namespace {

Verdict realizable(std::string citation) { return {VerdictStatus::Realizable, std::nullopt, std::move(citation)}; }

Verdict blocked(ObstructionKind kind, std::string citation, std::string family = "") {
  return {VerdictStatus::NotRealizable, Obstruction{kind, std::move(family)}, std::move(citation)};
}

bool all_zero(const std::vector<GaussianRational>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](const GaussianRational& v) { return v.is_zero(); });
}

bool all_equal(const std::vector<GaussianRational>& values) {
  return std::all_of(values.begin(), values.end(),
                     [&](const GaussianRational& v) { return v == values[0]; });
}

std::vector<int> sorted_desc(std::vector<int> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

// --- genus 1 ----------------------------------------------------------------

Verdict decide_genus1(const ValidatedSignature& vs, const RootedResidueConfig& config,
                      const ComponentSelector& comp) {
  const StratumSignature& sig = vs.sig;
  auto zeros = sorted_desc(sig.zero_orders);
  auto evens = sorted_desc(sig.even_pole_orders);
  auto residues = config.all_residues();
  int p = sig.p(), s = sig.s(), r = sig.r();

  // Thm 1.2 i: (4a;(-4^a)) and (2a-1,2a+1;(-4^a)) omit the origin.
  if (r == 0 && s == 0 && p >= 1 &&
      std::all_of(evens.begin(), evens.end(), [](int b) { return b == 4; })) {
    int a = p;
    bool family = zeros == std::vector<int>{4 * a} ||
                  zeros == sorted_desc({2 * a - 1, 2 * a + 1});
    if (family && all_zero(residues)) return blocked(ObstructionKind::Origin, "Thm 1.2 i");
  }

  // Thm 1.2 ii: (2s;(-2^s)) and (s-1,s+1;(-2^s)), s even, omit C*.(1,...,1).
  if (r == 0 && p == 0 && s >= 2 && s % 2 == 0) {
    bool family = zeros == std::vector<int>{2 * s} || zeros == sorted_desc({s - 1, s + 1});
    if (family && all_equal(residues))
      return blocked(ObstructionKind::ProportionalAllOnes, "Thm 1.2 ii");
  }

  // Thm 1.2 iii: three exceptional components omit the origin.
  if (!comp.whole_stratum && all_zero(residues)) {
    bool iii = (zeros == std::vector<int>{6} && evens == std::vector<int>{6} &&
                comp.rotation_number == 1) ||
               (zeros == std::vector<int>{3, 3} && evens == std::vector<int>{6} &&
                comp.rotation_number == 1) ||
               (zeros == std::vector<int>{12} && evens == std::vector<int>{6, 6} &&
                comp.rotation_number == 3);
    if (iii && s == 0 && r == 0) return blocked(ObstructionKind::ExceptionalComponent, "Thm 1.2 iii");
  }

  return realizable("Thm 1.2 iv");
}

// --- genus 0 ----------------------------------------------------------------

struct EvenPole {
  int order;
  GaussianRational residue;
};

Verdict decide_genus0(const ValidatedSignature& vs, const RootedResidueConfig& config) {
  const StratumSignature& sig = vs.sig;
  int p = sig.p(), s = sig.s(), r = sig.r();
  int odd_zeros = vs.odd_zeros;

  std::vector<EvenPole> even_poles;
  for (int i = 0; i < p; ++i)
    even_poles.push_back({sig.even_pole_orders[i], config.even_pole_roots[i].square()});
  // NOTE: validate_signature sorted the orders, but the caller's root order
  // matches the caller's pole order; decide() passes the unsorted signature.
  auto double_residues = config.double_pole_residues();
  auto residues = config.all_residues();

  if (odd_zeros + r >= 4) return realizable("Thm 1.3");
  if (r == 2) return realizable("Thm 1.4");

  if (r == 1 && odd_zeros == 1) {
    // Thm 1.5: the origin is omitted iff the even zero orders sum below 2p.
    if (s == 0 && all_zero(residues)) {
      long even_zero_sum = 0;
      for (int a : sig.zero_orders)
        if (a % 2 == 0) even_zero_sum += a;
      if (even_zero_sum < 2L * p) return blocked(ObstructionKind::Origin, "Thm 1.5 i");
      return realizable("Thm 1.5 ii");
    }
    return realizable("Thm 1.5 ii");
  }

  // Remaining: two odd zeros, no odd poles.
  if (odd_zeros != 2 || r != 0)
    throw Error(ErrorCode::BadSignature, "unexpected odd-singularity pattern in genus 0");
  std::vector<int> odd_orders;
  for (int a : sig.zero_orders)
    if (a % 2 != 0) odd_orders.push_back(a);
  int a_lo = std::min(odd_orders[0], odd_orders[1]);
  int a_hi = std::max(odd_orders[0], odd_orders[1]);
  int n = sig.n();
  auto zeros = sorted_desc(sig.zero_orders);

  if (p > 0 && s > 0) {
    // Thm 1.6: four exceptional families, all with exactly two zeros.
    if (n == 2) {
      auto even_orders = sorted_desc(sig.even_pole_orders);
      bool all_fours = std::all_of(even_orders.begin(), even_orders.end(),
                                   [](int b) { return b == 4; });
      // i: (2s'-1,2s'+1;-4;(-2^{2s'})) without C*.(0;1,...,1).
      if (p == 1 && even_orders[0] == 4 && s >= 2 && s % 2 == 0 &&
          zeros == sorted_desc({s - 1, s + 1})) {
        if (even_poles[0].residue.is_zero() && all_equal(double_residues))
          return blocked(ObstructionKind::SpecialFamily, "Thm 1.6 i", "C*.(0;1,...,1)");
      }
      // ii: (2a-1,2a+1;(-4^a);(-2^2)) without C*.(0,...,0;1,1).
      if (all_fours && s == 2 && zeros == sorted_desc({2 * p - 1, 2 * p + 1})) {
        bool even_zeroes = std::all_of(even_poles.begin(), even_poles.end(),
                                       [](const EvenPole& e) { return e.residue.is_zero(); });
        if (even_zeroes && double_residues[0] == double_residues[1])
          return blocked(ObstructionKind::SpecialFamily, "Thm 1.6 ii", "C*.(0,...,0;1,1)");
      }
      // iii: (2s'+1,2s'+1;-4;(-2^{2s'+1})) without C*.(1;1,...,1).
      if (p == 1 && even_orders[0] == 4 && s % 2 == 1 && zeros == std::vector<int>{s, s}) {
        if (!even_poles[0].residue.is_zero() && all_equal(double_residues) &&
            even_poles[0].residue == double_residues[0])
          return blocked(ObstructionKind::SpecialFamily, "Thm 1.6 iii", "C*.(1;1,...,1)");
      }
      // iv: (2a-1,2a-1;(-4^a);-2) without C*.(1,0,...,0;1).
      if (all_fours && s == 1 && zeros == std::vector<int>{2 * p - 1, 2 * p - 1}) {
        int nonzero = 0;
        GaussianRational value;
        for (const auto& e : even_poles)
          if (!e.residue.is_zero()) {
            ++nonzero;
            value = e.residue;
          }
        if (nonzero == 1 && value == double_residues[0])
          return blocked(ObstructionKind::SpecialFamily, "Thm 1.6 iv", "C*.(1,0,...,0;1)");
      }
    }
    return realizable("Thm 1.6");
  }

  if (p > 0 && s == 0) {
    // Thm 1.7 i: two families excluding C.(1,1,(0^{p-2})).
    if (n == 2 && p >= 2) {
      std::multiset<int> orders;
      for (const auto& e : even_poles) orders.insert(e.order);
      auto matches_family = [&](int b, bool twin) {
        // twin: poles {b,b} with zeros (2p+b-7, 2p+b-5); else poles {b,b+2}
        // with equal zeros (2p+b-5, 2p+b-5); remaining poles all -4.
        std::multiset<int> want;
        want.insert(b);
        want.insert(twin ? b : b + 2);
        for (int i = 0; i < p - 2; ++i) want.insert(4);
        if (orders != want) return false;
        if (twin) return zeros == sorted_desc({2 * p + b - 7, 2 * p + b - 5});
        return zeros == std::vector<int>{2 * p + b - 5, 2 * p + b - 5};
      };
      int b_max = *std::max_element(sig.even_pole_orders.begin(), sig.even_pole_orders.end());
      for (int b = 4; b <= b_max; b += 2) {
        for (bool twin : {false, true}) {
          if (!matches_family(b, twin)) continue;
          // Distinguished poles carry a common lambda (possibly 0), others 0.
          int second = twin ? b : b + 2;
          for (int i = 0; i < p; ++i) {
            if (even_poles[i].order != b) continue;
            for (int j = 0; j < p; ++j) {
              if (j == i || even_poles[j].order != second) continue;
              if (even_poles[i].residue != even_poles[j].residue) continue;
              bool rest_zero = true;
              for (int k = 0; k < p; ++k)
                if (k != i && k != j && !even_poles[k].residue.is_zero()) rest_zero = false;
              if (rest_zero)
                return blocked(ObstructionKind::SpecialFamily, "Thm 1.7 i", "C.(1,1,0,...,0)");
            }
          }
          // Family matched but the configuration is off the excluded line.
          return realizable("Thm 1.7 i");
        }
      }
    }
    long even_zero_sum = 0;
    for (int a : sig.zero_orders)
      if (a % 2 == 0) even_zero_sum += a;
    if (even_zero_sum < 2L * p) {
      if (all_zero(residues)) return blocked(ObstructionKind::Origin, "Thm 1.7 ii");
      return realizable("Thm 1.7 ii");
    }
    return realizable("Thm 1.7 iii");
  }

  if (p == 0 && s > 0) {
    // Thm 1.8 i: (2s'-1,2s'+1;(-2^{2s'+2})) without crosse configurations.
    if (n == 2 && s >= 2 && s % 2 == 0 && zeros == sorted_desc({s - 3, s - 1})) {
      if (is_crosse(double_residues)) return blocked(ObstructionKind::Crosse, "Thm 1.8 i");
    }
    // Thm 1.8 ii: (2s'-1,2s'-1;(-2^{2s'+1})) without triangular patterns
    // (R1,R2,R3,...,R3).
    if (n == 2 && s >= 3 && s % 2 == 1 && zeros == std::vector<int>{s - 2, s - 2}) {
      std::vector<GaussianRational> distinct;
      for (const auto& R : double_residues)
        if (std::find(distinct.begin(), distinct.end(), R) == distinct.end())
          distinct.push_back(R);
      for (const auto& Z : distinct) {
        int count = 0;
        std::vector<GaussianRational> rest;
        for (const auto& R : double_residues)
          if (R == Z && count < s - 2)
            ++count;
          else
            rest.push_back(R);
        if (count == s - 2 && rest.size() == 2 && is_triangular(rest[0], rest[1], Z))
          return blocked(ObstructionKind::Triangular, "Thm 1.8 ii");
      }
    }
    // Thm 1.8 iii/iv: arithmetic configurations below the length bounds.
    if (auto form = arithmetic_normal_form(double_residues)) {
      if (form->sum_is_odd && form->sum < a_hi + 2)
        return blocked(ObstructionKind::ArithmeticOddSum, "Thm 1.8 iii");
      if (!form->sum_is_odd && form->sum < a_lo + a_hi + 4)
        return blocked(ObstructionKind::ArithmeticEvenSum, "Thm 1.8 iv");
    }
    return realizable("Thm 1.8");
  }

  throw Error(ErrorCode::BadSignature, "genus-0 signature with two odd zeros and no poles");
}

}  // namespace

Verdict decide(const StratumSignature& sig, const RootedResidueConfig& config,
               const ComponentSelector& comp) {
  ValidatedSignature vs = validate_signature(sig);
  validate_config(sig, config);
  validate_component(sig, comp);
  if (vs.forces_square)
    throw Error(ErrorCode::NonPrimitiveStratum,
                "every differential of this type is the square of an abelian differential");

  Verdict verdict;
  if (!sig.has_poles()) {
    verdict = stratum_nonempty_holomorphic(sig)
                  ? realizable("Prop 1.10")
                  : blocked(ObstructionKind::SpecialFamily, "Prop 1.10", "empty stratum");
  } else if (sig.genus >= 2) {
    verdict = realizable("Thm 1.1");
  } else if (sig.genus == 1) {
    // Keep the caller's pole order / root pairing: rebuild a signature whose
    // even pole order list matches the config's root list positionally.
    verdict = decide_genus1(vs, config, comp);
  } else {
    ValidatedSignature raw = vs;
    raw.sig = sig;  // preserve positional pairing with the config
    verdict = decide_genus0(raw, config);
  }

  if (verdict.status == VerdictStatus::Realizable &&
      !witness_covered(sig, config, comp))
    verdict.status = VerdictStatus::RealizableNoWitness;
  return verdict;
}

}  // namespace quadstrata
