#include "quadstrata/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace quadstrata {

void validate_plan(const CylinderChainPlan& plan) {
  int s = plan.vertex_count();
  if (s == 0) throw Error(ErrorCode::BadInput, "plan has no cylinders");
  if ((int)plan.orientation.size() != s)
    throw Error(ErrorCode::BadInput, "plan needs one orientation per cylinder");
  for (int o : plan.orientation)
    if (o != 1 && o != -1) throw Error(ErrorCode::BadInput, "orientations are +1 or -1");
  std::vector<int> uses(plan.edge_count, 0);
  for (const auto& sl : plan.slots) {
    if (sl.empty()) throw Error(ErrorCode::BadInput, "every cylinder boundary carries a slot");
    for (int e : sl) {
      if (e < 0 || e >= plan.edge_count) throw Error(ErrorCode::BadInput, "slot references a missing edge");
      ++uses[e];
    }
  }
  for (int u : uses)
    if (u != 2) throw Error(ErrorCode::BadInput, "each saddle connection has exactly two sides");
}

std::vector<bool> plan_cycle_edges(const CylinderChainPlan& plan) {
  int s = plan.vertex_count();
  // Endpoints of each edge.
  std::vector<std::vector<int>> at(plan.edge_count);
  for (int v = 0; v < s; ++v)
    for (int e : plan.slots[v]) at[e].push_back(v);
  std::vector<int> degree(s, 0);
  for (int v = 0; v < s; ++v) degree[v] = (int)plan.slots[v].size();
  std::vector<bool> removed_edge(plan.edge_count, false);
  std::vector<bool> removed_vertex(s, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < s; ++v) {
      if (removed_vertex[v] || degree[v] != 1) continue;
      for (int e : plan.slots[v]) {
        if (removed_edge[e]) continue;
        removed_edge[e] = true;
        for (int u : at[e]) --degree[u];
        break;
      }
      removed_vertex[v] = true;
      changed = true;
    }
  }
  std::vector<bool> cycle(plan.edge_count);
  for (int e = 0; e < plan.edge_count; ++e) cycle[e] = !removed_edge[e];
  return cycle;
}

std::optional<std::vector<Rational>> solve_plan_lengths(const CylinderChainPlan& plan,
                                                        const std::vector<long>& roots) {
  int s = plan.vertex_count();
  int m = plan.edge_count;
  // Rows: one per cylinder: sum of slot lengths = circumference.
  std::vector<std::vector<Rational>> a(s, std::vector<Rational>(m + 1, Rational(0)));
  for (int v = 0; v < s; ++v) {
    for (int e : plan.slots[v]) a[v][e] += 1;
    a[v][m] = roots[v];
  }
  // Gauss-Jordan over Q.
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < m && row < s; ++col) {
    int piv = -1;
    for (int i = row; i < s; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    Rational lead = a[row][col];
    for (int j = col; j <= m; ++j) a[row][j] /= lead;
    for (int i = 0; i < s; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (int j = col; j <= m; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int i = row; i < s; ++i)
    if (a[i][m] != 0) return std::nullopt;  // inconsistent

  std::vector<bool> is_pivot(m, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  std::vector<Rational> base(m, Rational(0));
  for (int i = 0; i < (int)pivot_col.size(); ++i) base[pivot_col[i]] = a[i][m];

  if (free_cols.empty()) {
    for (const auto& L : base)
      if (L <= 0) return std::nullopt;
    return base;
  }
  if (free_cols.size() > 1) return std::nullopt;  // not unicyclic

  int f = free_cols[0];
  std::vector<Rational> kernel(m, Rational(0));
  kernel[f] = 1;
  for (int i = 0; i < (int)pivot_col.size(); ++i) kernel[pivot_col[i]] = -a[i][f];
  // base + t*kernel > 0 componentwise.
  bool has_lo = false, has_hi = false;
  Rational lo(0), hi(0);
  for (int e = 0; e < m; ++e) {
    if (kernel[e] > 0) {
      Rational bound = -base[e] / kernel[e];
      if (!has_lo || bound > lo) lo = bound, has_lo = true;
    } else if (kernel[e] < 0) {
      Rational bound = -base[e] / kernel[e];
      if (!has_hi || bound < hi) hi = bound, has_hi = true;
    } else if (base[e] <= 0) {
      return std::nullopt;
    }
  }
  Rational t;
  if (has_lo && has_hi) {
    if (lo >= hi) return std::nullopt;
    t = (lo + hi) / 2;
  } else if (has_lo) {
    t = lo + 1;
  } else if (has_hi) {
    t = hi - 1;
  }
  std::vector<Rational> out(m);
  for (int e = 0; e < m; ++e) {
    out[e] = base[e] + t * kernel[e];
    if (out[e] <= 0) return std::nullopt;
  }
  return out;
}

FlatSurface assemble_plan(const CylinderChainPlan& plan, const std::vector<Rational>& lengths) {
  validate_plan(plan);
  SurfaceBuilder builder;
  int s = plan.vertex_count();
  for (int v = 0; v < s; ++v) {
    std::vector<GaussianRational> vectors;
    for (int e : plan.slots[v])
      vectors.push_back(gr(Rational(plan.orientation[v]) * lengths[e], Rational(0)));
    builder.add_cylinder(std::move(vectors));
  }
  // Slot positions of each edge.
  std::vector<std::vector<std::pair<int, int>>> sides(plan.edge_count);
  for (int v = 0; v < s; ++v)
    for (int k = 0; k < (int)plan.slots[v].size(); ++k)
      sides[plan.slots[v][k]].push_back({v, k});
  for (int e = 0; e < plan.edge_count; ++e) {
    auto [v1, k1] = sides[e][0];
    auto [v2, k2] = sides[e][1];
    Twist twist =
        plan.orientation[v1] == plan.orientation[v2] ? Twist::half_turn : Twist::translation;
    builder.glue({v1, k1}, {v2, k2}, twist);
  }
  return builder.take();
}

namespace {

// Combinatorial cone angles: corner classes of the vertex walk; every
// corner of a straight cylinder boundary contributes pi.
std::vector<int> corner_class_sizes(const CylinderChainPlan& plan) {
  int s = plan.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> sides(plan.edge_count);
  for (int v = 0; v < s; ++v)
    for (int k = 0; k < (int)plan.slots[v].size(); ++k)
      sides[plan.slots[v][k]].push_back({v, k});
  // Corner (v, k) sits between slot k and slot k+1 (cyclic); its incoming
  // side is slot k. next = corner whose incoming side is the glued twin of
  // the outgoing side.
  std::vector<int> offset(s + 1, 0);
  for (int v = 0; v < s; ++v) offset[v + 1] = offset[v] + (int)plan.slots[v].size();
  int total = offset[s];
  auto corner_id = [&](int v, int k) { return offset[v] + k; };
  std::vector<int> next(total, -1);
  for (int v = 0; v < s; ++v) {
    int d = (int)plan.slots[v].size();
    for (int k = 0; k < d; ++k) {
      int out_slot = (k + 1) % d;
      int e = plan.slots[v][out_slot];
      auto [a, b] = std::pair(sides[e][0], sides[e][1]);
      auto other = (a == std::pair(v, out_slot)) ? b : a;
      next[corner_id(v, k)] = corner_id(other.first, other.second);
    }
  }
  std::vector<int> sizes;
  std::vector<bool> seen(total, false);
  for (int c0 = 0; c0 < total; ++c0) {
    if (seen[c0]) continue;
    int n = 0, c = c0;
    do {
      seen[c] = true;
      ++n;
      c = next[c];
    } while (c != c0);
    sizes.push_back(n);
  }
  return sizes;
}

bool primitive_orientation(const CylinderChainPlan& plan) {
  std::vector<std::vector<int>> at(plan.edge_count);
  for (int v = 0; v < plan.vertex_count(); ++v)
    for (int e : plan.slots[v]) at[e].push_back(v);
  for (int e = 0; e < plan.edge_count; ++e)
    if (plan.orientation[at[e][0]] == plan.orientation[at[e][1]]) return true;
  return false;
}

std::vector<std::vector<std::pair<int, int>>> prufer_trees(int s) {
  // All labeled trees on s vertices via Prüfer sequences.
  std::vector<std::vector<std::pair<int, int>>> trees;
  if (s == 1) {
    trees.push_back({});
    return trees;
  }
  if (s == 2) {
    trees.push_back({{0, 1}});
    return trees;
  }
  std::vector<int> seq(s - 2, 0);
  while (true) {
    // Decode.
    std::vector<int> degree(s, 1);
    for (int x : seq) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    std::set<int> leaves;
    for (int v = 0; v < s; ++v)
      if (degree[v] == 1) leaves.insert(v);
    std::vector<int> rest(seq.begin(), seq.end());
    for (int x : rest) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.push_back({std::min(leaf, x), std::max(leaf, x)});
      if (--degree[x] == 1) leaves.insert(x);
    }
    int u = *leaves.begin(), v = *std::next(leaves.begin());
    edges.push_back({u, v});
    trees.push_back(edges);
    // Next sequence.
    int i = s - 3;
    while (i >= 0 && seq[i] == s - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return trees;
}

}  // namespace

std::vector<SearchWitness> enumerate_normal_forms(const StratumSignature& sig,
                                                  const std::vector<long>& roots, int budget,
                                                  bool first_only) {
  ValidatedSignature vs = validate_signature(sig);
  if (sig.genus != 0 || sig.p() != 0 || sig.r() != 0 || sig.n() != 2 || vs.odd_zeros != 2)
    throw Error(ErrorCode::BadSignature,
                "the normal-form search covers genus-0 strata with two odd zeros and double poles");
  int s = sig.s();
  if ((int)roots.size() != s) throw Error(ErrorCode::BadInput, "expected one root per double pole");
  for (long r : roots)
    if (r <= 0) throw Error(ErrorCode::BadInput, "roots must be positive integers");
  if (s > budget) throw Error(ErrorCode::BudgetExceeded, "double pole count exceeds the budget");

  std::vector<int> target = sig.zero_orders;
  std::sort(target.begin(), target.end());

  std::vector<SearchWitness> out;

  // Multigraphs: labeled tree plus one extra edge (loops allowed), deduped.
  std::set<std::vector<std::pair<int, int>>> seen_graphs;
  auto trees = prufer_trees(s);
  for (const auto& tree : trees) {
    for (int i = 0; i < s; ++i) {
      for (int j = i; j < s; ++j) {
        std::vector<std::pair<int, int>> edges = tree;
        edges.push_back({i, j});
        std::sort(edges.begin(), edges.end());
        if (!seen_graphs.insert(edges).second) continue;

        CylinderChainPlan proto;
        proto.edge_count = s;
        proto.slots.assign(s, {});
        proto.orientation.assign(s, 1);
        // Endpoint lists per vertex (unordered yet).
        std::vector<std::vector<int>> incident(s);
        for (int e = 0; e < s; ++e) {
          incident[edges[e].first].push_back(e);
          incident[edges[e].second].push_back(e);
        }
        // Lengths depend only on the edge multiset; solve once.
        for (int v = 0; v < s; ++v) proto.slots[v] = incident[v];
        auto lengths = solve_plan_lengths(proto, roots);
        if (!lengths) continue;

        // Ribbon structures: cyclic orders (first element pinned).
        std::vector<std::vector<std::vector<int>>> orders(s);
        for (int v = 0; v < s; ++v) {
          std::vector<int> rest(incident[v].begin() + 1, incident[v].end());
          std::sort(rest.begin(), rest.end());
          do {
            std::vector<int> cyc;
            cyc.push_back(incident[v][0]);
            cyc.insert(cyc.end(), rest.begin(), rest.end());
            orders[v].push_back(cyc);
          } while (std::next_permutation(rest.begin(), rest.end()));
        }
        std::vector<int> pick(s, 0);
        bool more = true;
        while (more) {
          CylinderChainPlan plan = proto;
          for (int v = 0; v < s; ++v) plan.slots[v] = orders[v][pick[v]];
          // Cheap filter: combinatorial cone angles must match the stratum.
          auto sizes = corner_class_sizes(plan);
          std::vector<int> got;
          for (int n : sizes) got.push_back(n - 2);
          std::sort(got.begin(), got.end());
          if (got == target) {
            // Orientations: first cylinder up; keep primitive assignments.
            for (int mask = 0; mask < (1 << (s - 1)); ++mask) {
              for (int v = 1; v < s; ++v) plan.orientation[v] = (mask >> (v - 1)) & 1 ? -1 : 1;
              if (!primitive_orientation(plan)) continue;
              SearchWitness witness;
              witness.plan = plan;
              witness.lengths = *lengths;
              witness.on_cycle = plan_cycle_edges(plan);
              witness.surface = assemble_plan(plan, *lengths);
              witness.invariants = verify(witness.surface);
              // Independent confirmation of the combinatorial filter.
              std::vector<int> orders_check = witness.invariants.zero_orders;
              std::sort(orders_check.begin(), orders_check.end());
              if (orders_check != target || !witness.invariants.primitive ||
                  !witness.invariants.connected || witness.invariants.genus != 0)
                throw Error(ErrorCode::PropertyViolated,
                            "normal-form assembly disagrees with the verifier");
              out.push_back(std::move(witness));
              if (first_only) return out;
            }
          }
          // Advance ribbon picks.
          int v = s - 1;
          while (v >= 0) {
            if (++pick[v] < (int)orders[v].size()) break;
            pick[v--] = 0;
          }
          more = v >= 0;
        }
      }
    }
  }
  return out;
}

void check_half_integer_lengths(const SearchWitness& witness, const std::vector<long>& roots) {
  long g = 0;
  for (long r : roots) g = std::gcd(g, r);
  if (g != 1) throw Error(ErrorCode::BadInput, "half-integrality applies to coprime integer roots");
  long total = std::accumulate(roots.begin(), roots.end(), 0L);
  bool odd = total % 2 != 0;
  for (int e = 0; e < witness.plan.edge_count; ++e) {
    const Rational& L = witness.lengths[e];
    bool is_integer = denominator(L) == 1;
    bool is_half = denominator(L) == 2;
    bool ok;
    if (!odd) {
      ok = is_integer;
    } else {
      ok = witness.on_cycle[e] ? is_half : is_integer;
    }
    if (!ok)
      throw Error(ErrorCode::PropertyViolated,
                  "saddle-connection length " + rational_to_string(L) +
                      " violates the half-integrality pattern");
  }
}

}  // namespace quadstrata
