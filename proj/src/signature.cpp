#include "quadstrata/signature.hpp"

#include <algorithm>
#include <numeric>

namespace quadstrata {

int StratumSignature::odd_zero_count() const {
  int c = 0;
  for (int a : zero_orders)
    if (a % 2 != 0) ++c;
  return c;
}

int StratumSignature::even_zero_count() const { return n() - odd_zero_count(); }

long StratumSignature::order_sum() const {
  long sum = 0;
  for (int a : zero_orders) sum += a;
  for (int b : even_pole_orders) sum -= b;
  for (int c : odd_pole_orders) sum -= c;
  sum -= 2L * double_pole_count;
  return sum;
}

bool StratumSignature::operator==(const StratumSignature& o) const {
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return genus == o.genus && double_pole_count == o.double_pole_count &&
         sorted(zero_orders) == sorted(o.zero_orders) &&
         sorted(even_pole_orders) == sorted(o.even_pole_orders) &&
         sorted(odd_pole_orders) == sorted(o.odd_pole_orders);
}

ValidatedSignature validate_signature(const StratumSignature& sig) {
  if (sig.genus < 0) throw Error(ErrorCode::BadInput, "negative genus");
  if (sig.double_pole_count < 0) throw Error(ErrorCode::BadInput, "negative double pole count");
  for (int a : sig.zero_orders)
    if (a < -1) throw Error(ErrorCode::IllegalOrder, "zero order below -1");
  for (int b : sig.even_pole_orders)
    if (b < 4 || b % 2 != 0) throw Error(ErrorCode::IllegalOrder, "even pole order must be even and >= 4");
  for (int c : sig.odd_pole_orders)
    if (c < 3 || c % 2 == 0) throw Error(ErrorCode::IllegalOrder, "odd pole order must be odd and >= 3");
  long target = 4L * sig.genus - 4;
  if (sig.order_sum() != target)
    throw Error(ErrorCode::DegreeMismatch, "order sum is " + std::to_string(sig.order_sum()) +
                                               ", expected " + std::to_string(target));

  ValidatedSignature out;
  out.sig = sig;
  // Canonical order: descending, odd zero orders listed before even ones.
  std::stable_sort(out.sig.zero_orders.begin(), out.sig.zero_orders.end(),
                   [](int a, int b) {
                     bool ao = a % 2 != 0, bo = b % 2 != 0;
                     if (ao != bo) return ao;
                     return a > b;
                   });
  std::sort(out.sig.even_pole_orders.rbegin(), out.sig.even_pole_orders.rend());
  std::sort(out.sig.odd_pole_orders.rbegin(), out.sig.odd_pole_orders.rend());
  out.odd_zeros = sig.odd_zero_count();
  out.even_zeros = sig.even_zero_count();

  int odd_singularities = out.odd_zeros + sig.r();
  if (odd_singularities % 2 != 0)
    throw Error(ErrorCode::DegreeMismatch, "odd-order singularity count must be even");

  out.forces_square = sig.genus == 0 && odd_singularities == 0;
  return out;
}

bool stratum_nonempty_holomorphic(const StratumSignature& sig) {
  if (sig.has_poles()) throw Error(ErrorCode::BadInput, "signature has poles");
  auto v = validate_signature(sig);
  std::vector<int> zeros = v.sig.zero_orders;
  std::sort(zeros.begin(), zeros.end());
  if (sig.genus == 1 && zeros.empty()) return false;
  if (sig.genus == 1 && zeros == std::vector<int>{-1, 1}) return false;
  if (sig.genus == 2 && zeros == std::vector<int>{4}) return false;
  if (sig.genus == 2 && zeros == std::vector<int>{1, 3}) return false;
  // Genus 0 primitive strata additionally require an odd order (only squares
  // otherwise), caught by forces_square.
  if (v.forces_square) return false;
  return true;
}

long max_disjoint_cylinders(const StratumSignature& sig) {
  if (!stratum_nonempty_holomorphic(sig))
    throw Error(ErrorCode::EmptyStratum, "no primitive differential in this stratum");
  auto v = validate_signature(sig);
  return sig.genus + v.even_zeros + v.odd_zeros / 2 - 1;
}

std::vector<GaussianRational> RootedResidueConfig::even_pole_residues() const {
  std::vector<GaussianRational> out;
  out.reserve(even_pole_roots.size());
  for (const auto& r : even_pole_roots) out.push_back(r.square());
  return out;
}

std::vector<GaussianRational> RootedResidueConfig::double_pole_residues() const {
  std::vector<GaussianRational> out;
  out.reserve(double_pole_roots.size());
  for (const auto& r : double_pole_roots) out.push_back(r.square());
  return out;
}

std::vector<GaussianRational> RootedResidueConfig::all_residues() const {
  auto out = even_pole_residues();
  auto d = double_pole_residues();
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

void validate_config(const StratumSignature& sig, const RootedResidueConfig& config) {
  if ((int)config.even_pole_roots.size() != sig.p())
    throw Error(ErrorCode::BadInput, "expected one root per even pole");
  if ((int)config.double_pole_roots.size() != sig.s())
    throw Error(ErrorCode::BadInput, "expected one root per double pole");
  for (const auto& r : config.double_pole_roots)
    if (r.is_zero()) throw Error(ErrorCode::BadInput, "double pole residues never vanish");
}

RootedResidueConfig normalize_by_first_nonzero(const RootedResidueConfig& config) {
  GaussianRational pivot{Rational(0), Rational(0)};
  for (const auto& r : config.even_pole_roots)
    if (!r.is_zero()) {
      pivot = r;
      break;
    }
  if (pivot.is_zero())
    for (const auto& r : config.double_pole_roots)
      if (!r.is_zero()) {
        pivot = r;
        break;
      }
  if (pivot.is_zero()) return config;
  RootedResidueConfig out = config;
  for (auto& r : out.even_pole_roots) r = r / pivot;
  for (auto& r : out.double_pole_roots) r = r / pivot;
  return out;
}

std::vector<int> legal_rotation_numbers(const StratumSignature& sig) {
  if (sig.genus != 1) throw Error(ErrorCode::IllegalComponent, "rotation numbers classify genus-1 components");
  long g = 0;
  for (int a : sig.zero_orders) g = std::gcd(g, (long)std::abs(a));
  for (int b : sig.even_pole_orders) g = std::gcd(g, (long)b);
  for (int c : sig.odd_pole_orders) g = std::gcd(g, (long)c);
  if (sig.s() > 0) g = std::gcd(g, 2L);
  std::vector<int> out;
  bool strict = sig.n() == 1 && sig.p() + sig.r() == 1 && sig.s() == 0;
  for (int d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    if (d % 2 == 0) continue;  // primitive components have odd rotation number
    if (strict && d == g) continue;
    out.push_back(d);
  }
  return out;
}

void validate_component(const StratumSignature& sig, const ComponentSelector& comp) {
  if (comp.whole_stratum) return;
  if (sig.genus >= 2)
    throw Error(ErrorCode::ComponentUnknownForGenusGe2,
                "component selectors are unsupported for genus >= 2");
  if (sig.genus == 0)
    throw Error(ErrorCode::IllegalComponent, "genus-0 strata are connected");
  auto legal = legal_rotation_numbers(sig);
  if (std::find(legal.begin(), legal.end(), comp.rotation_number) == legal.end())
    throw Error(ErrorCode::IllegalComponent,
                "no primitive component with rotation number " + std::to_string(comp.rotation_number));
}

}  // namespace quadstrata
