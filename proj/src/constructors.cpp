#include "quadstrata/constructors.hpp"

#include "quadstrata/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace quadstrata {

namespace {

// Root normalization used throughout the recipes: nonnegative real part,
// positive imaginary part on the imaginary axis.
GaussianRational normalize_root(const GaussianRational& r) {
  if (r.re > 0 || (r.re == 0 && r.im > 0)) return r;
  return -r;
}

// Total order by argument in (-pi, pi], ties broken by norm. The half-plane
// rank keeps the comparison transitive across all quadrants.
bool arg_less(const GaussianRational& a, const GaussianRational& b) {
  auto rank = [](const GaussianRational& z) {
    if (z.im < 0) return 0;                // (-pi, 0)
    if (z.im == 0 && z.re > 0) return 1;   // 0
    if (z.im > 0) return 2;                // (0, pi)
    return 3;                              // pi
  };
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb;
  Rational c = cross(a, b);
  if (c != 0) return c > 0;
  return a.norm_sq() < b.norm_sq();
}

LocalInvariants make_claim(int genus, std::vector<int> zeros, std::vector<int> pole_orders,
                           std::map<int, GaussianRational> residues, bool primitive) {
  LocalInvariants claim;
  claim.genus = genus;
  claim.zero_orders = std::move(zeros);
  std::stable_sort(claim.zero_orders.begin(), claim.zero_orders.end(), [](int a, int b) {
    bool ao = a % 2 != 0, bo = b % 2 != 0;
    if (ao != bo) return ao;
    return a > b;
  });
  claim.pole_orders = std::move(pole_orders);
  std::sort(claim.pole_orders.rbegin(), claim.pole_orders.rend());
  claim.residues = std::move(residues);
  claim.connected = true;
  claim.primitive = primitive;
  return claim;
}

bool matches_claim(const Witness& witness) {
  return verify(witness.surface) == witness.claimed;
}

}  // namespace

// ---------------------------------------------------------------------------
// CC construction

Witness construct_cc(int a1, int a2, const std::vector<GaussianRational>& signed_roots, int e1,
                     const GaussianRational& v) {
  if (a1 % 2 == 0 || a2 % 2 == 0 || a1 < -1 || a2 < -1)
    throw Error(ErrorCode::BadSignature, "the CC construction needs two odd zero orders");
  int s = (int)signed_roots.size();
  int l1 = (a1 + 1) / 2, l2 = (a2 + 1) / 2;
  if (a1 + a2 + 4 != 2 * s)
    throw Error(ErrorCode::BadSignature, "zero orders do not match the double pole count");
  if (e1 != l1 || s - e1 != l2 + 1)
    throw Error(ErrorCode::BadInput, "the split must have e1 = l1 and e2 = l2 + 1");
  GaussianRational total = v + v;
  for (const auto& r : signed_roots) total = total + r;
  if (!total.is_zero()) throw Error(ErrorCode::ClosureFailure, "polygon does not close up");
  if (v.is_zero()) throw Error(ErrorCode::ClosureFailure, "doubled edge degenerates");

  std::vector<GaussianRational> polygon;
  polygon.push_back(v);
  for (int i = 0; i < e1; ++i) polygon.push_back(signed_roots[i]);
  polygon.push_back(v);
  for (int i = e1; i < s; ++i) polygon.push_back(signed_roots[i]);

  SurfaceBuilder builder;
  int poly;
  try {
    poly = builder.add_polygon(polygon);
  } catch (const Error& e) {
    throw Error(ErrorCode::DegeneratePolygon, e.what());
  }
  std::map<int, GaussianRational> residues;
  for (int i = 0; i < s; ++i) {
    int part = builder.add_cylinder({-signed_roots[i]});
    int boundary = i < e1 ? 1 + i : 2 + i;
    builder.glue({poly, boundary}, builder.group_segment(part, 0), Twist::translation);
    residues[i] = signed_roots[i].square();
  }
  builder.glue({poly, 0}, {poly, 1 + e1}, Twist::half_turn);

  Witness witness;
  witness.surface = builder.take();
  witness.recipe = "cc";
  witness.claimed = make_claim(0, {a1, a2}, std::vector<int>(s, -2), std::move(residues), true);
  if (!matches_claim(witness))
    throw Error(ErrorCode::DegeneratePolygon,
                "the polygon closes but does not produce the intended singularities");
  return witness;
}

std::optional<Witness> plan_cc(const StratumSignature& sig, const RootedResidueConfig& config) {
  ValidatedSignature vs = validate_signature(sig);
  if (sig.genus != 0 || sig.n() != 2 || vs.odd_zeros != 2 || sig.p() != 0 || sig.r() != 0 ||
      sig.s() < 1 || sig.s() > 9)
    return std::nullopt;
  int a1 = std::min(vs.sig.zero_orders[0], vs.sig.zero_orders[1]);
  int a2 = std::max(vs.sig.zero_orders[0], vs.sig.zero_orders[1]);
  int s = sig.s();
  int l1 = (a1 + 1) / 2;

  std::vector<GaussianRational> roots;
  for (const auto& r : config.double_pole_roots) roots.push_back(normalize_root(r));

  auto attempt = [&](const std::vector<GaussianRational>& ordered,
                     const GaussianRational& v) -> std::optional<Witness> {
    try {
      return construct_cc(a1, a2, ordered, l1, v);
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  // Pass 1: each group sorted by argument (both directions). Pass 2 (small
  // s): every distinct ordering of the two groups.
  for (int pass = 0; pass < 2; ++pass) {
    if (pass == 1 && s > 5) break;
    for (int signs = 0; signs < (1 << s); ++signs) {
      if (signs & 1) continue;  // global sign flips reflect the polygon through a point
      std::vector<GaussianRational> signed_roots(roots);
      for (int i = 0; i < s; ++i)
        if ((signs >> i) & 1) signed_roots[i] = -signed_roots[i];
      GaussianRational sum;
      for (const auto& r : signed_roots) sum = sum + r;
      GaussianRational v = -(sum / Rational(2));
      if (v.is_zero()) continue;

      std::vector<bool> mask(s, false);
      for (int i = s - l1; i < s; ++i) mask[i] = true;
      std::sort(mask.begin(), mask.end());
      do {
        std::vector<GaussianRational> first, second;
        for (int i = 0; i < s; ++i) (mask[i] ? first : second).push_back(signed_roots[i]);
        if (pass == 0) {
          for (int variant = 0; variant < 2; ++variant) {
            auto cmp = [&](const GaussianRational& x, const GaussianRational& y) {
              return variant == 0 ? arg_less(y, x) : arg_less(x, y);
            };
            std::vector<GaussianRational> e1 = first, e2 = second;
            std::sort(e1.begin(), e1.end(), cmp);
            std::sort(e2.begin(), e2.end(), cmp);
            e1.insert(e1.end(), e2.begin(), e2.end());
            if (auto w = attempt(e1, v)) return w;
          }
        } else {
          std::sort(first.begin(), first.end());
          std::sort(second.begin(), second.end());
          do {
            do {
              std::vector<GaussianRational> ordered = first;
              ordered.insert(ordered.end(), second.begin(), second.end());
              if (auto w = attempt(ordered, v)) return w;
            } while (std::next_permutation(second.begin(), second.end()));
          } while (std::next_permutation(first.begin(), first.end()));
        }
      } while (std::next_permutation(mask.begin(), mask.end()));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Genus 0, single zero, odd poles

Witness construct_genus0_odd_pole(const StratumSignature& sig, const RootedResidueConfig& config) {
  ValidatedSignature vs = validate_signature(sig);
  validate_config(sig, config);
  if (sig.genus != 0 || sig.n() != 1 || sig.r() < 1)
    throw Error(ErrorCode::BadSignature,
                "this recipe covers genus-0 strata with one zero and odd poles");
  int p = sig.p(), r = sig.r(), s = sig.s();
  const std::vector<int>& even_orders = sig.even_pole_orders;  // caller's order
  const std::vector<int>& c = vs.sig.odd_pole_orders;
  int zero_order = vs.sig.zero_orders[0];
  GaussianRational one = gr(1);

  std::vector<GaussianRational> even_roots;
  for (int i = 0; i < p; ++i) even_roots.push_back(normalize_root(config.even_pole_roots[i]));
  std::vector<GaussianRational> double_roots;
  for (int i = 0; i < s; ++i) double_roots.push_back(normalize_root(config.double_pole_roots[i]));

  bool zero_config = s == 0 && std::all_of(even_roots.begin(), even_roots.end(),
                                           [](const GaussianRational& x) { return x.is_zero(); });

  SurfaceBuilder builder;
  std::map<int, GaussianRational> residues;
  int next_mark = 0;

  if (zero_config) {
    if (r < 2)
      throw Error(ErrorCode::UnsupportedCase,
                  "the all-zero configuration needs at least two odd poles here");
    // Even poles: trivial parts (1;1), chained lower-to-upper.
    std::vector<int> even_parts;
    for (int i = 0; i < p; ++i) {
      even_parts.push_back(
          builder.add_polar_part(make_polar_part_even(even_orders[i], 1, {one}, {one})));
      residues[next_mark++] = gr(0);
    }
    for (int i = 0; i + 1 < p; ++i)
      builder.glue(builder.group_segment(even_parts[i], 1),
                   builder.group_segment(even_parts[i + 1], 0), Twist::translation);
    std::vector<int> odd_parts;
    for (int j = 1; j < r; ++j) {
      odd_parts.push_back(builder.add_polar_part(make_polar_part_odd(c[j], OddSide::upper, {one})));
      ++next_mark;
    }
    int collector = builder.add_polar_part(
        make_polar_part_odd(c[0], OddSide::lower, std::vector<GaussianRational>(r - 1, one)));
    ++next_mark;
    int slot = 0;
    if (p > 0) {
      // Chain bottom feeds the first odd pole; chain top feeds the collector.
      builder.glue(builder.group_segment(even_parts.back(), 1),
                   builder.group_segment(odd_parts[0], 0), Twist::translation);
      builder.glue(builder.group_segment(even_parts[0], 0),
                   builder.group_segment(collector, slot++), Twist::translation);
      for (int j = 1; j < r - 1; ++j)
        builder.glue(builder.group_segment(odd_parts[j], 0),
                     builder.group_segment(collector, slot++), Twist::translation);
    } else {
      for (int j = 0; j < r - 1; ++j)
        builder.glue(builder.group_segment(odd_parts[j], 0),
                     builder.group_segment(collector, slot++), Twist::translation);
    }
  } else {
    // Collector recipe: the first odd pole carries one unit segment per
    // other odd pole plus the root of every nonzero residue.
    struct Consumer {
      GaussianRational vector;
      int part = -1;
      int segment = 0;
    };
    std::vector<Consumer> consumers;
    GaussianRational carrier;

    std::vector<int> zero_evens;
    for (int i = 0; i < p; ++i) {
      if (even_roots[i].is_zero()) {
        zero_evens.push_back(i);
        continue;
      }
      if (carrier.is_zero()) carrier = even_roots[i];
    }
    for (int k = 0; k < s && carrier.is_zero(); ++k) carrier = double_roots[k];
    if (carrier.is_zero())
      throw Error(ErrorCode::UnsupportedCase, "no nonzero residue to anchor the collector");

    // Add parts in pole order so residues stay attached position by position.
    std::vector<int> chain_after;  // zero-residue evens, chained onto `carrier`
    for (int i = 0; i < p; ++i) {
      if (even_roots[i].is_zero()) {
        int part =
            builder.add_polar_part(make_polar_part_even(even_orders[i], 1, {carrier}, {carrier}));
        residues[next_mark++] = gr(0);
        chain_after.push_back(part);
      } else {
        int part = builder.add_polar_part(
            make_polar_part_even(even_orders[i], 1, {even_roots[i]}, {}));
        residues[next_mark++] = even_roots[i].square();
        consumers.push_back({even_roots[i], part, 0});
      }
    }
    for (int j = 1; j < r; ++j) {
      int part = builder.add_polar_part(make_polar_part_odd(c[j], OddSide::upper, {one}));
      ++next_mark;
      consumers.push_back({one, part, 0});
    }
    for (int k = 0; k < s; ++k) {
      int part = builder.add_cylinder({double_roots[k]});
      residues[next_mark++] = double_roots[k].square();
      consumers.push_back({double_roots[k], part, 0});
    }

    // Chain the zero-residue parts onto the provider of `carrier`.
    for (int part : chain_after) {
      for (auto& consumer : consumers) {
        if (consumer.vector == carrier) {
          builder.glue(builder.group_segment(consumer.part, consumer.segment),
                       builder.group_segment(part, 1), Twist::translation);
          consumer.part = part;
          consumer.segment = 0;
          break;
        }
      }
    }

    std::vector<GaussianRational> w;
    for (const auto& consumer : consumers) w.push_back(consumer.vector);
    std::vector<int> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return arg_less(w[x], w[y]); });
    std::vector<GaussianRational> sorted_w;
    for (int i : order) sorted_w.push_back(w[i]);
    int collector = builder.add_polar_part(make_polar_part_odd(c[0], OddSide::lower, sorted_w));
    ++next_mark;
    int m = (int)sorted_w.size();
    for (int k = 0; k < m; ++k) {
      const Consumer& consumer = consumers[order[m - 1 - k]];
      builder.glue(builder.group_segment(collector, k),
                   builder.group_segment(consumer.part, consumer.segment), Twist::translation);
    }
  }

  std::vector<int> pole_orders;
  for (int i = 0; i < p; ++i) pole_orders.push_back(-even_orders[i]);
  for (int j = 0; j < r; ++j) pole_orders.push_back(-c[j]);
  for (int k = 0; k < s; ++k) pole_orders.push_back(-2);

  Witness witness;
  witness.surface = builder.take();
  witness.recipe = zero_config ? "odd-pole-origin" : "odd-pole-collector";
  witness.claimed = make_claim(0, {zero_order}, pole_orders, residues, true);
  if (!matches_claim(witness))
    throw Error(ErrorCode::UnsupportedCase, "odd-pole recipe does not close up for this input");
  return witness;
}

// ---------------------------------------------------------------------------
// Cylinder chains

Witness construct_cylinder_chain(const StratumSignature& sig, const std::vector<long>& roots,
                                 const CylinderChainPlan& plan) {
  validate_plan(plan);
  ValidatedSignature vs = validate_signature(sig);
  if (sig.genus != 0 || sig.n() != 2 || vs.odd_zeros != 2 || sig.p() != 0 || sig.r() != 0)
    throw Error(ErrorCode::BadSignature, "cylinder chains cover Q_0(a1,a2;(-2^s))");
  if ((int)roots.size() != sig.s() || plan.vertex_count() != sig.s())
    throw Error(ErrorCode::BadInput, "plan size does not match the double pole count");
  auto lengths = solve_plan_lengths(plan, roots);
  if (!lengths)
    throw Error(ErrorCode::InfeasibleLengths, "the boundary-length system has no positive solution");
  Witness witness;
  witness.surface = assemble_plan(plan, *lengths);
  witness.recipe = "cylinder-chain";
  std::map<int, GaussianRational> residues;
  for (int i = 0; i < sig.s(); ++i) residues[i] = gr(Rational(roots[i] * roots[i]), Rational(0));
  witness.claimed =
      make_claim(0, vs.sig.zero_orders, std::vector<int>(sig.s(), -2), std::move(residues), true);
  if (!matches_claim(witness))
    throw Error(ErrorCode::InfeasibleLengths, "plan solves but produces different singularities");
  return witness;
}

namespace {

std::optional<Witness> plan_cylinder_chain(const StratumSignature& sig,
                                           const RootedResidueConfig& config) {
  if (sig.s() > 7) return std::nullopt;
  std::vector<GaussianRational> roots;
  for (const auto& r : config.double_pole_roots) {
    GaussianRational n = normalize_root(r);
    if (n.im != 0) return std::nullopt;  // chains live on one rational ray
    roots.push_back(n);
  }
  auto form = arithmetic_normal_form(config.double_pole_residues());
  if (!form) return std::nullopt;
  Rational scale = roots[0].re / Rational(form->roots[0]);
  std::vector<long> integer_roots;
  for (const auto& n : form->roots) integer_roots.push_back(n.convert_to<long>());

  auto found = enumerate_normal_forms(sig, integer_roots, 7, true);
  if (found.empty()) return std::nullopt;
  Witness witness;
  witness.surface = scale_surface(found[0].surface, scale);
  witness.recipe = "cylinder-chain";
  std::map<int, GaussianRational> residues;
  for (int i = 0; i < sig.s(); ++i)
    residues[i] = gr(Rational(integer_roots[i] * integer_roots[i]) * scale * scale, Rational(0));
  ValidatedSignature vs = validate_signature(sig);
  witness.claimed =
      make_claim(0, vs.sig.zero_orders, std::vector<int>(sig.s(), -2), std::move(residues), true);
  if (!matches_claim(witness)) return std::nullopt;
  return witness;
}

}  // namespace

// ---------------------------------------------------------------------------
// Genus 1, single zero

namespace {

// v1 + v2 = half with a simple (v1, v2, v1, v2) zigzag: the offset is i when
// the half-sum leans right (x-monotone zigzag), else 1 (ascending zigzag).
std::pair<GaussianRational, GaussianRational> zigzag_pair(const GaussianRational& half) {
  GaussianRational c = half.re > 0 ? gr(0, 1) : gr(1);
  GaussianRational v1 = half / Rational(2) + c;
  GaussianRational v2 = half / Rational(2) - c;
  return {v1, v2};
}

// Four-cell core for a single even pole: two positive domains over v and two
// negative domains over w with v - w = root/2, rays cycled with `o1` spacer
// opens between U1 and L1 and the rest between U2 and L2, and the boundary
// segments glued crosswise by half turns. Covers the zero residue (v = w)
// and every nonzero one.
std::optional<Witness> genus1_four_cell(const StratumSignature& sig, const ValidatedSignature& vs,
                                        const RootedResidueConfig& config, int o1) {
  if (sig.p() != 1 || sig.s() != 0) return std::nullopt;
  int b = sig.even_pole_orders[0];
  if (b < 6) return std::nullopt;  // needs three half-plane layers per side
  int spacers = b / 2 - 3;
  if (o1 < 0 || o1 > spacers) return std::nullopt;
  int o2 = spacers - o1;

  GaussianRational root = normalize_root(config.even_pole_roots[0]);
  GaussianRational w = root.is_zero() ? gr(1, 1) : gr(1);
  GaussianRational v = w + root / Rational(2);

  std::vector<Piece> pieces;
  pieces.push_back(Piece::positive({v}));  // U1
  pieces.push_back(Piece::positive({v}));  // U2
  pieces.push_back(Piece::negative({w}));  // L1
  pieces.push_back(Piece::negative({w}));  // L2
  for (int i = 0; i < spacers; ++i) pieces.push_back(Piece::open_right({}, {}));

  SurfaceBuilder builder;
  int first = builder.add_marked_pieces(pieces, b, "core");
  int u1 = first, u2 = first + 1, l1 = first + 2, l2 = first + 3;
  int next_spacer = first + 4;
  // open_right(empty) exposes [upper ray-out 0, lower ray-in 1].
  auto chain_right = [&](EdgeRef from_out, int count, EdgeRef to_in) {
    EdgeRef out = from_out;
    for (int i = 0; i < count; ++i) {
      builder.glue(out, {next_spacer, 1}, Twist::translation);
      out = {next_spacer, 0};
      ++next_spacer;
    }
    builder.glue(out, to_in, Twist::translation);
  };
  chain_right({u1, 2}, o1, {l1, 0});
  builder.glue({l1, 2}, {u2, 0}, Twist::translation);
  chain_right({u2, 2}, o2, {l2, 0});
  builder.glue({l2, 2}, {u1, 0}, Twist::translation);
  builder.glue({u1, 1}, {u2, 1}, Twist::half_turn);
  builder.glue({l1, 1}, {l2, 1}, Twist::half_turn);

  Witness witness;
  witness.surface = builder.take();
  witness.recipe = "genus1-four-cell";
  witness.claimed = make_claim(1, vs.sig.zero_orders, {-b}, {{0, root.square()}}, true);
  if (!matches_claim(witness)) return std::nullopt;
  return witness;
}

// Collector core: an even polar part of maximal order carries the zigzag
// (v1, v2, v1, v2) above and the roots of all other nonzero residues below;
// the doubled segments close the handle, the carried roots feed the other
// polar parts, and zero-residue even poles chain inside the first half turn.
std::optional<Witness> genus1_collector(const StratumSignature& sig, const ValidatedSignature& vs,
                                        const RootedResidueConfig& config, int tau) {
  int p = sig.p(), s = sig.s();
  if (p == 0) return std::nullopt;
  const std::vector<int>& even_orders = sig.even_pole_orders;
  std::vector<GaussianRational> even_roots;
  for (int i = 0; i < p; ++i) even_roots.push_back(normalize_root(config.even_pole_roots[i]));
  std::vector<GaussianRational> double_roots;
  for (int k = 0; k < s; ++k) double_roots.push_back(normalize_root(config.double_pole_roots[k]));

  int collector = 0;
  for (int i = 1; i < p; ++i)
    if (even_orders[i] > even_orders[collector]) collector = i;
  int b = even_orders[collector];
  if (tau < 1 || tau > b / 2 - 1) return std::nullopt;

  GaussianRational total = even_roots[collector];
  std::vector<std::pair<GaussianRational, int>> carried;  // (root, owner: pole or -1-k)
  for (int i = 0; i < p; ++i) {
    if (i == collector || even_roots[i].is_zero()) continue;
    carried.push_back({even_roots[i], i});
    total = total + even_roots[i];
  }
  for (int k = 0; k < s; ++k) {
    carried.push_back({double_roots[k], -1 - k});
    total = total + double_roots[k];
  }
  if (total.is_zero()) return std::nullopt;  // the zero-residue core handles that case

  auto [v1, v2] = zigzag_pair(total / Rational(2));
  std::vector<GaussianRational> lower;
  std::vector<int> lower_owner;
  {
    std::vector<int> order(carried.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return arg_less(carried[x].first, carried[y].first); });
    for (int i : order) {
      lower.push_back(carried[i].first);
      lower_owner.push_back(carried[i].second);
    }
  }

  SurfaceBuilder builder;
  std::map<int, GaussianRational> residues;
  int core;
  try {
    core = builder.add_polar_part(make_polar_part_even(b, tau, {v1, v2, v1, v2}, lower));
  } catch (const Error&) {
    return std::nullopt;
  }
  residues[0] = even_roots[collector].square();
  int next_mark = 1;

  // Zero-residue even poles: trivial parts chained inside the U1-U3 turn.
  EdgeRef u_first = builder.group_segment(core, 0);
  EdgeRef u_end = builder.group_segment(core, 2);
  for (int i = 0; i < p; ++i) {
    if (i == collector || !even_roots[i].is_zero()) continue;
    int part;
    try {
      part = builder.add_polar_part(make_polar_part_even(even_orders[i], 1, {v1}, {v1}));
    } catch (const Error&) {
      return std::nullopt;
    }
    residues[next_mark++] = gr(0);
    builder.glue(u_first, builder.group_segment(part, 1), Twist::translation);
    u_first = builder.group_segment(part, 0);
  }
  builder.glue(u_first, u_end, Twist::half_turn);
  builder.glue(builder.group_segment(core, 1), builder.group_segment(core, 3), Twist::half_turn);

  int m = (int)lower.size();
  for (int k = 0; k < m; ++k) {
    int owner = lower_owner[m - 1 - k];
    EdgeRef slot = builder.group_segment(core, 4 + k);
    if (owner >= 0) {
      int part;
      try {
        part = builder.add_polar_part(
            make_polar_part_even(even_orders[owner], 1, {even_roots[owner]}, {}));
      } catch (const Error&) {
        return std::nullopt;
      }
      residues[next_mark++] = even_roots[owner].square();
      builder.glue(slot, builder.group_segment(part, 0), Twist::translation);
    } else {
      int idx = -1 - owner;
      int part = builder.add_cylinder({double_roots[idx]});
      residues[next_mark++] = double_roots[idx].square();
      builder.glue(slot, builder.group_segment(part, 0), Twist::translation);
    }
  }

  std::vector<int> pole_orders;
  for (int i = 0; i < p; ++i) pole_orders.push_back(-even_orders[i]);
  for (int k = 0; k < s; ++k) pole_orders.push_back(-2);

  Witness witness;
  witness.surface = builder.take();
  witness.recipe = "genus1-collector";
  witness.claimed = make_claim(1, vs.sig.zero_orders, pole_orders, residues, true);
  if (!matches_claim(witness)) return std::nullopt;
  return witness;
}

// All poles double: one crossed cylinder for s = 1, else a polygon with the
// roots along the lower half plane closed by four collinear doubled edges.
std::optional<Witness> genus1_all_double(const StratumSignature& sig,
                                         const ValidatedSignature& vs,
                                         const RootedResidueConfig& config) {
  int s = sig.s();
  std::vector<GaussianRational> roots;
  for (const auto& r : config.double_pole_roots) roots.push_back(normalize_root(r));

  if (s == 1) {
    GaussianRational rho = roots[0];
    GaussianRational c = rho * gr(0, 1) / Rational(4);
    GaussianRational v = rho / Rational(4) + c, w = rho / Rational(4) - c;
    SurfaceBuilder builder;
    int part = builder.add_cylinder({v, w, v, w});
    builder.glue(builder.group_segment(part, 0), builder.group_segment(part, 2), Twist::half_turn);
    builder.glue(builder.group_segment(part, 1), builder.group_segment(part, 3), Twist::half_turn);
    Witness witness;
    witness.surface = builder.take();
    witness.recipe = "genus1-cylinder";
    witness.claimed = make_claim(1, vs.sig.zero_orders, {-2}, {{0, rho.square()}}, true);
    if (!matches_claim(witness)) return std::nullopt;
    return witness;
  }

  // Flip every root into the closed lower half plane and sort by argument.
  for (auto& r : roots)
    if (r.im > 0 || (r.im == 0 && r.re < 0)) r = -r;
  std::vector<int> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    Rational c = cross(roots[x], roots[y]);
    if (c != 0) return c > 0;
    return roots[x].norm_sq() < roots[y].norm_sq();
  });
  bool collinear = true;
  for (int i = 1; i < s; ++i)
    if (cross(roots[order[0]], roots[order[i]]) != 0) collinear = false;
  if (collinear) return std::nullopt;
  GaussianRational sum;
  for (const auto& r : roots) sum = sum + r;
  GaussianRational a = -(sum / Rational(4));
  if (a.is_zero()) return std::nullopt;

  SurfaceBuilder builder;
  std::vector<GaussianRational> polygon;
  for (int i : order) polygon.push_back(roots[i]);
  for (int k = 0; k < 4; ++k) polygon.push_back(a);
  int poly;
  try {
    poly = builder.add_polygon(polygon);
  } catch (const Error&) {
    return std::nullopt;
  }
  std::map<int, GaussianRational> residues;
  for (int k = 0; k < s; ++k) {
    int part = builder.add_cylinder({-roots[order[k]]});
    builder.glue({poly, k}, builder.group_segment(part, 0), Twist::translation);
    residues[k] = config.double_pole_roots[order[k]].square();
  }
  builder.glue({poly, s}, {poly, s + 2}, Twist::half_turn);
  builder.glue({poly, s + 1}, {poly, s + 3}, Twist::half_turn);

  Witness witness;
  witness.surface = builder.take();
  witness.recipe = "genus1-polygon";
  witness.claimed =
      make_claim(1, vs.sig.zero_orders, std::vector<int>(s, -2), std::move(residues), true);
  if (!matches_claim(witness)) return std::nullopt;
  return witness;
}

}  // namespace

void attach_rotation_certificate(Witness& witness) {
  LocalInvariants inv = verify(witness.surface);
  if (inv.genus != 1 || inv.zero_orders.size() != 1)
    throw Error(ErrorCode::UnsupportedCase,
                "rotation certificates need a single-zero genus-1 surface");
  auto cycles = vertex_corner_cycles(witness.surface);
  if (cycles.size() != 1) throw Error(ErrorCode::UnsupportedCase, "expected a single vertex");
  const auto& cycle = cycles[0];
  int n = (int)cycle.size();

  // Port i = the out-edge of the i-th corner of the vertex walk. Each side
  // of each saddle connection appears exactly once; two saddle-connection
  // loops form a symplectic pair when their port pairs interleave.
  std::map<std::pair<int, int>, int> port_pos;
  for (int i = 0; i < n; ++i) port_pos[{cycle[i].piece, cycle[i].out_edge}] = i;

  struct LoopPorts {
    int a, b;
  };
  std::vector<LoopPorts> loops;
  for (const auto& g : witness.surface.gluings) {
    auto ka = std::pair(g.a.piece, g.a.boundary_index);
    auto kb = std::pair(g.b.piece, g.b.boundary_index);
    if (!port_pos.count(ka) || !port_pos.count(kb)) continue;  // ray gluings
    loops.push_back({port_pos[ka], port_pos[kb]});
  }
  auto interleave = [&](const LoopPorts& x, const LoopPorts& y) {
    auto inside = [&](int a, int b, int t) {
      int len = (b - a + n) % n;
      int off = (t - a + n) % n;
      return off > 0 && off < len;
    };
    return inside(x.a, x.b, y.a) != inside(x.a, x.b, y.b);
  };

  auto build_loop = [&](int port) {
    int piece = cycle[port].piece;
    int edge = cycle[port].out_edge;
    int start = -1;
    for (int i = 0; i < n; ++i)
      if (cycle[i].piece == piece && cycle[i].in_edge == edge) start = i;
    if (start < 0) throw Error(ErrorCode::NotClosed, "loop edge has no head corner");
    int sectors = ((port - start + n) % n) + 1;
    return std::vector<LoopStep>{{piece, edge, sectors}};
  };

  for (size_t i = 0; i < loops.size(); ++i) {
    for (size_t j = i + 1; j < loops.size(); ++j) {
      if (!interleave(loops[i], loops[j])) continue;
      witness.alpha = build_loop(loops[i].a);
      witness.beta = build_loop(loops[j].a);
      witness.alpha_index = loop_index(witness.surface, witness.alpha);
      witness.beta_index = loop_index(witness.surface, witness.beta);
      long g = std::labs(witness.alpha_index);
      g = std::gcd(g, std::labs(witness.beta_index));
      for (int a : inv.zero_orders) g = std::gcd(g, (long)std::abs(a));
      for (int o : inv.pole_orders) g = std::gcd(g, (long)std::abs(o));
      witness.rotation_number = (int)g;
      return;
    }
  }
  throw Error(ErrorCode::UnsupportedCase, "no symplectic pair of saddle-connection loops found");
}

Witness construct_genus1_single_zero(const StratumSignature& sig,
                                     const RootedResidueConfig& config,
                                     const ComponentSelector& comp) {
  ValidatedSignature vs = validate_signature(sig);
  validate_config(sig, config);
  validate_component(sig, comp);
  if (sig.genus != 1 || sig.n() != 1 || sig.r() != 0 || !sig.has_poles())
    throw Error(ErrorCode::BadSignature,
                "this recipe covers genus-1 strata with a single zero and even or double poles");

  auto finish = [&](std::optional<Witness> candidate) -> std::optional<Witness> {
    if (!candidate) return std::nullopt;
    attach_rotation_certificate(*candidate);
    if (!comp.whole_stratum && candidate->rotation_number != comp.rotation_number)
      return std::nullopt;
    return candidate;
  };

  if (sig.p() == 0) {
    if (auto w = finish(genus1_all_double(sig, vs, config))) return *w;
    throw Error(ErrorCode::UnsupportedCase, "configuration outside the genus-1 catalog");
  }

  if (sig.p() == 1 && sig.s() == 0) {
    int b = sig.even_pole_orders[0];
    for (int o1 = 0; o1 <= b / 2 - 3; ++o1)
      if (auto w = finish(genus1_four_cell(sig, vs, config, o1))) return *w;
  }
  int b_max = *std::max_element(sig.even_pole_orders.begin(), sig.even_pole_orders.end());
  for (int tau = 1; tau <= b_max / 2 - 1; ++tau)
    if (auto w = finish(genus1_collector(sig, vs, config, tau))) return *w;
  throw Error(ErrorCode::UnsupportedCase, "configuration outside the genus-1 catalog");
}

// ---------------------------------------------------------------------------
// Dispatcher

std::optional<Witness> try_construct(const StratumSignature& sig,
                                     const RootedResidueConfig& config,
                                     const ComponentSelector& comp) {
  ValidatedSignature vs;
  try {
    vs = validate_signature(sig);
    validate_config(sig, config);
    validate_component(sig, comp);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (vs.forces_square) return std::nullopt;

  if (sig.genus == 0 && sig.n() == 2 && vs.odd_zeros == 2 && sig.p() == 0 && sig.r() == 0 &&
      sig.s() >= 1) {
    if (auto w = plan_cc(sig, config)) return w;
    if (auto w = plan_cylinder_chain(sig, config)) return w;
    return std::nullopt;
  }
  if (sig.genus == 0 && sig.n() == 1 && sig.r() >= 1) {
    try {
      return construct_genus0_odd_pole(sig, config);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  if (sig.genus == 1 && sig.n() == 1 && sig.r() == 0 && sig.has_poles()) {
    try {
      return construct_genus1_single_zero(sig, config, comp);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool witness_covered(const StratumSignature& sig, const RootedResidueConfig& config,
                     const ComponentSelector& comp) {
  return try_construct(sig, config, comp).has_value();
}

Witness construct(const StratumSignature& sig, const RootedResidueConfig& config,
                  const ComponentSelector& comp) {
  Verdict verdict = decide(sig, config, comp);
  if (verdict.status == VerdictStatus::NotRealizable)
    throw Error(ErrorCode::ObstructedConfiguration,
                "configuration is not realizable (" + verdict.citation + ")");
  auto witness = try_construct(sig, config, comp);
  if (!witness)
    throw Error(ErrorCode::UnsupportedCase, "realizable, but outside the construction catalog");
  return *witness;
}

}  // namespace quadstrata
