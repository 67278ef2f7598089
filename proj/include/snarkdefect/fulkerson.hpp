#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "snarkdefect/colouring.hpp"
#include "snarkdefect/defect.hpp"
#include "snarkdefect/graph.hpp"
#include "snarkdefect/parallel.hpp"
#include "snarkdefect/structure.hpp"

namespace snarkdefect {

/// Six perfect matchings (repetitions allowed) covering every edge exactly twice.
struct FulkersonCover {
  std::array<PerfectMatching, 6> members;
  friend bool operator==(const FulkersonCover&, const FulkersonCover&) = default;
};

struct CoverCheck {
  bool ok = false;
  std::vector<int> multiplicity;
  std::string violation;
};

inline CoverCheck verify_cover(const CubicGraph& g, const FulkersonCover& c) {
  CoverCheck r;
  r.multiplicity.assign(g.edge_count(), 0);
  for (int i = 0; i < 6; ++i) {
    std::string why;
    if (!is_perfect_matching(g, c.members[i], &why)) {
      r.violation = "member " + std::to_string(i + 1) + " is not a perfect matching: " + why;
      return r;
    }
    for (int e : c.members[i].ids()) ++r.multiplicity[e];
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (r.multiplicity[e] != 2) {
      r.violation = "edge " + std::to_string(e) + " has multiplicity " + std::to_string(r.multiplicity[e]);
      return r;
    }
  r.ok = true;
  return r;
}

struct CoverBudget {
  std::size_t max_matchings = std::size_t{1} << 20;
  std::uint64_t max_nodes_per_branch = std::numeric_limits<std::uint64_t>::max();
  unsigned threads = 0;
};

struct CoverSearchResult {
  std::optional<FulkersonCover> cover;
  bool exhaustive = false;
  bool none_found() const { return exhaustive && !cover; }
};

/// Searches 6-multisets of perfect matchings in nondecreasing index order.
/// A branch is cut when a member would push an edge past multiplicity 2, or
/// misses an edge that needs every remaining slot. Parallel over the first
/// member; the reported cover is the lexicographically least.
inline CoverSearchResult find_cover(const CubicGraph& g, const CoverBudget& budget = {}) {
  if (!is_bridgeless(g)) throw GraphError("find_cover requires a connected bridgeless cubic graph");
  auto en = enumerate_perfect_matchings(g, budget.max_matchings);
  const auto& pms = en.matchings;
  const int N = static_cast<int>(pms.size());
  const int m = g.edge_count();
  const int W = (m + 63) / 64;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(N) * W);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < W; ++k) bits[static_cast<std::size_t>(i) * W + k] = pms[i].words()[k];

  struct Chunk {
    std::optional<std::array<int, 6>> hit;
    bool budget_hit = false;
  };
  std::vector<Chunk> chunks(N);
  std::atomic<int> stop_at{N};

  parallel_for(N, budget.threads, [&](int first) {
    if (first > stop_at.load()) return;
    std::vector<int> mult(m, 0);
    std::array<int, 6> pick{};
    std::uint64_t nodes = 0;
    // per-level masks: forbidden = edges already at multiplicity 2,
    // required = edges whose deficit equals the number of open slots
    std::vector<std::vector<std::uint64_t>> forbidden(6, std::vector<std::uint64_t>(W)),
        required(6, std::vector<std::uint64_t>(W));
    auto add = [&](int i, int delta) {
      for (int e : pms[i].ids()) mult[e] += delta;
    };
    auto rec = [&](auto&& self, int level, int from) -> bool {
      if (level == 6) return true;
      if (++nodes > budget.max_nodes_per_branch) {
        chunks[first].budget_hit = true;
        return false;
      }
      if (first > stop_at.load(std::memory_order_relaxed)) return false;
      const int remaining = 6 - level;
      auto& forb = forbidden[level];
      auto& req = required[level];
      std::fill(forb.begin(), forb.end(), 0);
      std::fill(req.begin(), req.end(), 0);
      for (int e = 0; e < m; ++e) {
        int deficit = 2 - mult[e];
        if (deficit > remaining) return false;
        if (deficit == 0) forb[e >> 6] |= std::uint64_t{1} << (e & 63);
        if (deficit == remaining) req[e >> 6] |= std::uint64_t{1} << (e & 63);
      }
      for (int j = from; j < N; ++j) {
        const std::uint64_t* b = &bits[static_cast<std::size_t>(j) * W];
        bool ok = true;
        for (int k = 0; k < W && ok; ++k) ok = (b[k] & forb[k]) == 0 && (req[k] & ~b[k]) == 0;
        if (!ok) continue;
        pick[level] = j;
        add(j, 1);
        bool found = self(self, level + 1, j);
        add(j, -1);
        if (found) return true;
        if (chunks[first].budget_hit) return false;
      }
      return false;
    };
    pick[0] = first;
    add(first, 1);
    if (rec(rec, 1, first)) {
      chunks[first].hit = pick;
      atomic_min(stop_at, first);
    }
  });

  CoverSearchResult r;
  bool budget_hit = false;
  for (int i = 0; i < N; ++i) {
    if (chunks[i].hit) {
      FulkersonCover c;
      for (int k = 0; k < 6; ++k) c.members[k] = pms[(*chunks[i].hit)[k]];
      r.cover = c;
      break;
    }
    budget_hit |= chunks[i].budget_hit;
  }
  r.exhaustive = r.cover.has_value() || (en.complete && !budget_hit);
  return r;
}

/// Two regular 3-arrays.
struct ComplementaryPair {
  ThreeArray first, second;
};

/// Empty when the pair is complementary: both regular, equal cores, disjoint uncovered sets.
inline std::string complementary_violation(const CubicGraph& g, const ComplementaryPair& p) {
  auto ca = coverage(g, p.first), cb = coverage(g, p.second);
  if (!ca.regular()) return "first array has a triply covered edge";
  if (!cb.regular()) return "second array has a triply covered edge";
  auto qa = core_from_coverage(g, ca), qb = core_from_coverage(g, cb);
  if (qa.edges() != qb.edges()) return "cores differ";
  if (!(qa.uncovered & qb.uncovered).empty()) return "uncovered edge sets intersect";
  return {};
}

/// Splits a cover (sorted canonically) into its first and last three members.
inline ComplementaryPair cover_to_complementary(const CubicGraph& g, const FulkersonCover& c) {
  if (auto chk = verify_cover(g, c); !chk.ok) throw GraphError("cover_to_complementary: invalid cover: " + chk.violation);
  auto members = c.members;
  std::sort(members.begin(), members.end());
  ComplementaryPair p{ThreeArray{{members[0], members[1], members[2]}}, ThreeArray{{members[3], members[4], members[5]}}};
  if (auto why = complementary_violation(g, p); !why.empty())
    throw std::logic_error("cover split is not complementary: " + why);
  return p;
}

/// Nowhere-zero Z2 x Z2 flow on g minus `removed`; values 1..3 on kept edges,
/// 0 on removed ones.
struct GroupFlow {
  EdgeSet removed;
  std::vector<int> value;
};

inline std::string group_flow_violation(const CubicGraph& g, const GroupFlow& f) {
  if (static_cast<int>(f.value.size()) != g.edge_count() || f.removed.universe() != g.edge_count())
    return "flow size does not match graph";
  for (int e = 0; e < g.edge_count(); ++e) {
    bool gone = f.removed.contains(e);
    if (gone && f.value[e] != 0) return "removed edge " + std::to_string(e) + " carries a value";
    if (!gone && (f.value[e] < 1 || f.value[e] > 3)) return "edge " + std::to_string(e) + " has value " + std::to_string(f.value[e]);
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    int sum = 0;
    for (Dart d : g.darts(v)) sum ^= f.value[d.edge];
    if (sum) return "Kirchhoff violated at vertex " + std::to_string(v);
  }
  return {};
}

inline constexpr int kMaxCycleSpaceDimension = 24;

namespace detail {

// Bridges of g restricted to the kept edges.
inline bool subgraph_has_bridge(const CubicGraph& g, const EdgeSet& removed) {
  const int n = g.vertex_count();
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  bool bridge = false;
  auto dfs = [&](auto&& self, int v, int parent_edge) -> void {
    disc[v] = low[v] = timer++;
    for (Dart d : g.darts(v)) {
      if (removed.contains(d.edge) || d.edge == parent_edge || g.is_loop(d.edge)) continue;
      int w = g.endpoints(d.edge)[1 - d.end];
      if (disc[w] < 0) {
        self(self, w, d.edge);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > disc[v]) bridge = true;
      } else {
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(dfs, v, -1);
  return bridge;
}

// Edge set X inside `support` (a forest-spanned subgraph) whose odd-degree
// vertices are exactly T, or nullopt when some component holds an odd number of T.
inline std::optional<EdgeSet> t_join(const CubicGraph& g, const EdgeSet& support, std::vector<char> t) {
  const int n = g.vertex_count();
  EdgeSet x(g.edge_count());
  std::vector<int> parent_edge(n, -2), order;
  for (int root = 0; root < n; ++root) {
    if (parent_edge[root] != -2) continue;
    parent_edge[root] = -1;
    std::size_t first = order.size();
    order.push_back(root);
    for (std::size_t i = first; i < order.size(); ++i) {
      int v = order[i];
      for (Dart d : g.darts(v)) {
        if (!support.contains(d.edge)) continue;
        int w = g.endpoints(d.edge)[1 - d.end];
        if (parent_edge[w] != -2) continue;
        parent_edge[w] = d.edge;
        order.push_back(w);
      }
    }
    for (std::size_t i = order.size(); i-- > first + 1;) {
      int v = order[i];
      if (t[v]) {
        int e = parent_edge[v];
        x.insert(e);
        t[v] = 0;
        int p = g.other_endpoint(e, v);
        t[p] ^= 1;
      }
    }
    if (t[root]) return std::nullopt;
  }
  return x;
}

}  // namespace detail

/// Nowhere-zero Z2 x Z2 flow on g - removed, searched over the cycle space:
/// the flow is a pair (c1, c2) of even subgraphs with c1 | c2 = all kept edges.
/// For each c1 (enumerated over fundamental-cycle coefficients, high bits
/// chunked, Gray order inside a chunk) a c2 exists iff the odd-degree vertices
/// of the kept edges outside c1 admit a T-join inside c1. Value = 2*[c1] + [c2].
inline std::optional<GroupFlow> nz_4flow(const CubicGraph& g, const EdgeSet& removed, unsigned threads = 1,
                                         int max_dimension = kMaxCycleSpaceDimension) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (detail::subgraph_has_bridge(g, removed)) return std::nullopt;

  // spanning forest and fundamental cycles
  std::vector<int> parent_edge(n, -2), depth(n, 0);
  EdgeSet tree(m);
  for (int root = 0; root < n; ++root) {
    if (parent_edge[root] != -2) continue;
    parent_edge[root] = -1;
    std::vector<int> queue{root};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      for (Dart d : g.darts(v)) {
        if (removed.contains(d.edge)) continue;
        int w = g.endpoints(d.edge)[1 - d.end];
        if (parent_edge[w] != -2) continue;
        parent_edge[w] = d.edge;
        depth[w] = depth[v] + 1;
        tree.insert(d.edge);
        queue.push_back(w);
      }
    }
  }
  std::vector<EdgeSet> basis;
  for (int e = 0; e < m; ++e) {
    if (removed.contains(e) || tree.contains(e)) continue;
    EdgeSet cyc(m);
    cyc.insert(e);
    int a = g.endpoints(e)[0], b = g.endpoints(e)[1];
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      int pe = parent_edge[a];
      cyc.insert(pe);
      a = g.other_endpoint(pe, a);
    }
    basis.push_back(std::move(cyc));
  }
  const int dim = static_cast<int>(basis.size());
  if (dim > max_dimension)
    throw SizeLimitError("nz_4flow: cycle space dimension " + std::to_string(dim) + " exceeds bound " +
                         std::to_string(max_dimension));

  EdgeSet kept = removed.complement();
  const int high_bits = std::min(dim, 8);
  const int low_bits = dim - high_bits;
  const int chunk_count = 1 << high_bits;
  std::vector<std::optional<GroupFlow>> found(chunk_count);
  std::atomic<int> stop_at{chunk_count};

  auto try_c1 = [&](const EdgeSet& c1) -> std::optional<GroupFlow> {
    EdgeSet rest = kept & c1.complement();
    std::vector<char> t(n, 0);
    for (int e : rest.ids()) {
      if (g.is_loop(e)) continue;
      t[g.endpoints(e)[0]] ^= 1;
      t[g.endpoints(e)[1]] ^= 1;
    }
    auto x = detail::t_join(g, c1, std::move(t));
    if (!x) return std::nullopt;
    EdgeSet c2 = rest | *x;
    GroupFlow f{removed, std::vector<int>(m, 0)};
    for (int e = 0; e < m; ++e)
      if (kept.contains(e)) f.value[e] = 2 * c1.contains(e) + c2.contains(e);
    return f;
  };

  parallel_for(chunk_count, threads, [&](int chunk) {
    if (chunk > stop_at.load()) return;
    EdgeSet c1(m);
    for (int k = 0; k < high_bits; ++k)
      if ((chunk >> k) & 1) c1 ^= basis[low_bits + k];
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t i = 0; i < steps; ++i) {
      if (i > 0) c1 ^= basis[std::countr_zero(i)];
      if ((i & 1023) == 0 && chunk > stop_at.load(std::memory_order_relaxed)) return;
      if (auto f = try_c1(c1)) {
        found[chunk] = std::move(f);
        atomic_min(stop_at, chunk);
        return;
      }
    }
  });
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

inline std::optional<GroupFlow> nz_4flow(const CubicGraph& g, unsigned threads = 1) {
  return nz_4flow(g, EdgeSet(g.edge_count()), threads);
}

struct FlowPair {
  EdgeSet p1, p2;       // uncovered edges of the first and second array
  GroupFlow phi1, phi2;  // flows on g - p1 and g - p2
  std::array<EdgeSet, 2> doubly_rule_edges;  // edges valued by the doubly covered rule
};

/// phi_i(x) = t for x simply covered by member t; for x doubly covered by
/// members j and k, phi_i(x) = the third index.
inline FlowPair complementary_to_flows(const CubicGraph& g, const ComplementaryPair& p) {
  if (auto why = complementary_violation(g, p); !why.empty())
    throw GraphError("complementary_to_flows: invalid pair: " + why);
  const int m = g.edge_count();
  auto build = [&](const ThreeArray& a, EdgeSet& uncovered, GroupFlow& phi, EdgeSet& doubly_rule) {
    uncovered = EdgeSet(m);
    doubly_rule = EdgeSet(m);
    phi = GroupFlow{EdgeSet(m), std::vector<int>(m, 0)};
    for (int e = 0; e < m; ++e) {
      int count = 0, mask = 0;
      for (int t = 0; t < 3; ++t)
        if (a.members[t].contains(e)) {
          ++count;
          mask |= 1 << t;
        }
      if (count == 0) {
        uncovered.insert(e);
      } else if (count == 1) {
        phi.value[e] = std::countr_zero(static_cast<unsigned>(mask)) + 1;
      } else {
        phi.value[e] = std::countr_zero(static_cast<unsigned>(~mask & 7)) + 1;
        doubly_rule.insert(e);
      }
    }
    phi.removed = uncovered;
    if (auto why = group_flow_violation(g, phi); !why.empty())
      throw std::logic_error("derived flow is not a nowhere-zero Z2xZ2 flow: " + why);
  };
  FlowPair out;
  build(p.first, out.p1, out.phi1, out.doubly_rule_edges[0]);
  build(p.second, out.p2, out.phi2, out.doubly_rule_edges[1]);
  return out;
}

struct XiColouring {
  std::vector<std::array<int, 2>> xi;  // per edge, sorted 2-subset of {1..6}
  FulkersonCover cover;                // M_i = {e : i in xi(e)}, in index order 1..6
};

/// Builds xi: for x outside P1 u P2, {phi1(x), phi2(x)+3}; for x in P2,
/// {1,2,3} - {phi1(x)}; for x in P1, {4,5,6} - {phi2(x)+3}. phi1 lives on
/// g - P1, so P2 edges read phi1 and P1 edges read phi2.
inline XiColouring flows_to_cover(const CubicGraph& g, const EdgeSet& p1, const EdgeSet& p2, const GroupFlow& phi1,
                                  const GroupFlow& phi2) {
  const int m = g.edge_count();
  std::string why;
  if (!(p1 & p2).empty()) throw GraphError("flows_to_cover: P1 and P2 intersect");
  std::vector<int> deg1(g.vertex_count(), 0), deg2(g.vertex_count(), 0);
  for (int e : p1.ids())
    for (int v : g.endpoints(e)) ++deg1[v];
  for (int e : p2.ids())
    for (int v : g.endpoints(e)) ++deg2[v];
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (deg1[v] > 1 || deg2[v] > 1) throw GraphError("flows_to_cover: P1 or P2 is not a matching at vertex " + std::to_string(v));
    if (deg1[v] != deg2[v]) throw GraphError("flows_to_cover: P1 u P2 is not a union of circuits at vertex " + std::to_string(v));
  }
  if (phi1.removed != p1 || phi2.removed != p2) throw GraphError("flows_to_cover: flow domains do not match P1, P2");
  if (auto w = group_flow_violation(g, phi1); !w.empty()) throw GraphError("flows_to_cover: phi1 invalid: " + w);
  if (auto w = group_flow_violation(g, phi2); !w.empty()) throw GraphError("flows_to_cover: phi2 invalid: " + w);

  XiColouring out;
  out.xi.resize(m);
  for (int e = 0; e < m; ++e) {
    std::array<int, 2> s{};
    if (p2.contains(e)) {
      int k = 0;
      for (int i = 1; i <= 3; ++i)
        if (i != phi1.value[e]) s[k++] = i;
    } else if (p1.contains(e)) {
      int k = 0;
      for (int i = 4; i <= 6; ++i)
        if (i != phi2.value[e] + 3) s[k++] = i;
    } else {
      s = {phi1.value[e], phi2.value[e] + 3};
    }
    out.xi[e] = s;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    int mask = 0;
    for (Dart d : g.darts(v))
      for (int i : out.xi[d.edge]) {
        if (mask & (1 << i)) throw std::logic_error("xi colours at vertex " + std::to_string(v) + " do not partition {1..6}");
        mask |= 1 << i;
      }
    if (mask != 0x7e) throw std::logic_error("xi colours at vertex " + std::to_string(v) + " do not partition {1..6}");
  }
  for (int i = 0; i < 6; ++i) out.cover.members[i] = EdgeSet(m);
  for (int e = 0; e < m; ++e)
    for (int i : out.xi[e]) out.cover.members[i - 1].insert(e);
  if (auto chk = verify_cover(g, out.cover); !chk.ok) throw std::logic_error("xi does not induce a cover: " + chk.violation);
  return out;
}

inline XiColouring flows_to_cover(const CubicGraph& g, const FlowPair& f) {
  return flows_to_cover(g, f.p1, f.p2, f.phi1, f.phi2);
}

}  // namespace snarkdefect
