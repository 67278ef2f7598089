#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "snarkdefect/colouring.hpp"
#include "snarkdefect/defect.hpp"
#include "snarkdefect/graph.hpp"
#include "snarkdefect/junction.hpp"
#include "snarkdefect/parallel.hpp"

namespace snarkdefect {

/// Outer 5-circuit 0..4 (edges 0-4), spokes i--i+5 (edges 5-9), inner
/// pentagram 5+i -- 5+(i+2)%5 (edges 10-14).
inline CubicGraph petersen() {
  std::vector<std::array<int, 2>> e;
  for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5});
  for (int i = 0; i < 5; ++i) e.push_back({i, i + 5});
  for (int i = 0; i < 5; ++i) e.push_back({5 + i, 5 + (i + 2) % 5});
  return CubicGraph(10, std::move(e));
}

inline CubicGraph complete_k4() { return CubicGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

inline CubicGraph complete_k33() {
  std::vector<std::array<int, 2>> e;
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) e.push_back({a, b});
  return CubicGraph(6, std::move(e));
}

/// Two vertices joined by three parallel edges.
inline CubicGraph theta_graph() { return CubicGraph(2, {{0, 1}, {0, 1}, {0, 1}}); }

/// Isaacs flower snark J_n. Star i has centre 4i and leaves b=4i+1, c=4i+2,
/// d=4i+3; the b's form an n-circuit and the c's and d's one 2n-circuit
/// (c_{n-1} joins d_0, d_{n-1} joins c_0).
inline CubicGraph flower_snark(int n) {
  if (n < 3 || n % 2 == 0) throw GraphError("flower_snark: n must be odd and >= 3, got " + std::to_string(n));
  auto a = [](int i) { return 4 * i; };
  auto b = [](int i) { return 4 * i + 1; };
  auto c = [](int i) { return 4 * i + 2; };
  auto d = [](int i) { return 4 * i + 3; };
  std::vector<std::array<int, 2>> e;
  for (int i = 0; i < n; ++i) {
    e.push_back({a(i), b(i)});
    e.push_back({a(i), c(i)});
    e.push_back({a(i), d(i)});
  }
  for (int i = 0; i < n; ++i) e.push_back({b(i), b((i + 1) % n)});
  for (int i = 0; i + 1 < n; ++i) {
    e.push_back({c(i), c(i + 1)});
    e.push_back({d(i), d(i + 1)});
  }
  e.push_back({c(n - 1), d(0)});
  e.push_back({d(n - 1), c(0)});
  return CubicGraph(4 * n, std::move(e));
}

/// Dot product G.H: delete independent edges ab = e1 and cd = e2 from G and
/// adjacent vertices x, y from H, then join a, b to x's other neighbours and
/// c, d to y's (smaller id first). G keeps its vertex ids; H's survivors follow
/// in id order. Edge order: G's survivors, H's survivors, the four joins.
inline CubicGraph dot_product(const CubicGraph& g, int e1, int e2, const CubicGraph& h, int x, int y) {
  auto [a, b] = g.endpoints(e1);
  auto [c, d] = g.endpoints(e2);
  std::set<int> ends{a, b, c, d};
  if (e1 == e2 || ends.size() != 4) throw GraphError("dot_product: edges of the first graph must be independent");
  auto others = [&](int v, int skip) {
    std::vector<int> out;
    int joins = 0;
    for (Dart dt : h.darts(v)) {
      if (h.is_loop(dt.edge)) throw GraphError("dot_product: loop at vertex " + std::to_string(v));
      int w = h.other_endpoint(dt.edge, v);
      if (w == skip) ++joins;
      else out.push_back(w);
    }
    if (joins != 1 || out.size() != 2 || out[0] == out[1])
      throw GraphError("dot_product: vertices " + std::to_string(x) + ", " + std::to_string(y) +
                       " must be joined by one edge and have distinct other neighbours");
    std::sort(out.begin(), out.end());
    return out;
  };
  auto xs = others(x, y), ys = others(y, x);
  const int n = g.vertex_count();
  std::vector<int> hid(h.vertex_count(), -1);
  int next = n;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (v != x && v != y) hid[v] = next++;
  std::vector<std::array<int, 2>> edges;
  for (int e = 0; e < g.edge_count(); ++e)
    if (e != e1 && e != e2) edges.push_back(g.endpoints(e));
  for (int e = 0; e < h.edge_count(); ++e) {
    auto [p, q] = h.endpoints(e);
    if (hid[p] >= 0 && hid[q] >= 0) edges.push_back({hid[p], hid[q]});
  }
  edges.push_back({a, hid[xs[0]]});
  edges.push_back({b, hid[xs[1]]});
  edges.push_back({c, hid[ys[0]]});
  edges.push_back({d, hid[ys[1]]});
  return CubicGraph(next, std::move(edges));
}

/// The two Blanusa snarks (18 vertices) as dot products of two Petersen
/// graphs: which = 1 deletes outer edges 01 and 23, which = 2 deletes outer
/// edge 01 and inner edge 79.
inline CubicGraph blanusa_snark(int which) {
  if (which != 1 && which != 2) throw GraphError("blanusa_snark: index must be 1 or 2");
  return dot_product(petersen(), 0, which == 1 ? 2 : 12, petersen(), 0, 1);
}

/// Replaces v by a triangle t0=v, t1=n, t2=n+1 (new edges m, m+1, m+2 are
/// t0t1, t1t2, t2t0). The k-th incident end of v in (edge, end) order moves to t_k.
inline CubicGraph inflate_to_triangle(const CubicGraph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw GraphError("inflate_to_triangle: no vertex " + std::to_string(v));
  const auto& ds = g.darts(v);
  for (Dart d : ds)
    if (g.is_loop(d.edge)) throw GraphError("inflate_to_triangle: loop at vertex " + std::to_string(v));
  const int n = g.vertex_count();
  const int m = g.edge_count();
  auto edges = g.edges();
  std::array<int, 3> t{v, n, n + 1};
  for (int k = 0; k < 3; ++k) edges[ds[k].edge][ds[k].end] = t[k];
  edges.push_back({t[0], t[1]});
  edges.push_back({t[1], t[2]});
  edges.push_back({t[2], t[0]});
  (void)m;
  return CubicGraph(n + 2, std::move(edges));
}

/// Contracts the triangle on vertices tri (given as three mutually adjacent
/// vertices) to its smallest vertex: triangle edges vanish, the other two
/// vertices are removed and later ids shift down. Inverse of inflate_to_triangle.
inline CubicGraph contract_triangle(const CubicGraph& g, std::array<int, 3> tri) {
  std::sort(tri.begin(), tri.end());
  auto in_tri = [&](int x) { return x == tri[0] || x == tri[1] || x == tri[2]; };
  std::vector<int> triangle_edges;
  for (int e = 0; e < g.edge_count(); ++e)
    if (in_tri(g.endpoints(e)[0]) && in_tri(g.endpoints(e)[1]) && !g.is_loop(e)) triangle_edges.push_back(e);
  if (triangle_edges.size() != 3) throw GraphError("contract_triangle: vertices do not span exactly a triangle");
  std::vector<int> new_id(g.vertex_count());
  int next = 0;
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (x == tri[1] || x == tri[2]) continue;
    new_id[x] = next++;
  }
  new_id[tri[1]] = new_id[tri[2]] = new_id[tri[0]];
  std::vector<std::array<int, 2>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (std::find(triangle_edges.begin(), triangle_edges.end(), e) != triangle_edges.end()) continue;
    edges.push_back({new_id[g.endpoints(e)[0]], new_id[g.endpoints(e)[1]]});
  }
  return CubicGraph(next, std::move(edges));
}

/// True iff g - {u, v}, keeping the severed edges as dangling edges, is 3-edge-colourable.
inline bool is_removable_set_colourable(const CubicGraph& g, const std::vector<int>& vertices) {
  return three_edge_colour(delete_vertices(g, vertices).pole).has_value();
}

/// All adjacent pairs {u<v} whose removal (dangling edges kept) leaves a
/// 3-edge-colourable multipole, sorted.
inline std::vector<std::pair<int, int>> find_non_removable_pairs(const CubicGraph& g, unsigned threads = 1) {
  std::set<std::pair<int, int>> candidates;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    if (a != b) candidates.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<std::pair<int, int>> cand(candidates.begin(), candidates.end());
  std::vector<char> ok(cand.size(), 0);
  parallel_for(static_cast<int>(cand.size()), threads,
               [&](int i) { ok[i] = is_removable_set_colourable(g, {cand[i].first, cand[i].second}); });
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (ok[i]) out.push_back(cand[i]);
  return out;
}

struct Circuit {
  std::vector<int> vertices;  // cyclic order, starting at the smallest vertex
  std::vector<int> edges;     // sorted
};

/// All circuits of the given length (>= 3), each once, ordered by edge list.
inline std::vector<Circuit> circuits_of_length(const CubicGraph& g, int length) {
  std::map<std::vector<int>, Circuit> found;
  std::vector<int> path_v, path_e;
  std::vector<char> on_path(g.vertex_count(), 0);
  auto rec = [&](auto&& self, int s, int v) -> void {
    if (static_cast<int>(path_v.size()) == length) {
      for (Dart d : g.darts(v)) {
        if (g.is_loop(d.edge) || g.other_endpoint(d.edge, v) != s) continue;
        if (std::find(path_e.begin(), path_e.end(), d.edge) != path_e.end()) continue;
        Circuit c{path_v, path_e};
        c.edges.push_back(d.edge);
        std::sort(c.edges.begin(), c.edges.end());
        found.emplace(c.edges, std::move(c));
      }
      return;
    }
    for (Dart d : g.darts(v)) {
      if (g.is_loop(d.edge)) continue;
      int w = g.other_endpoint(d.edge, v);
      if (w <= s || on_path[w]) continue;
      on_path[w] = 1;
      path_v.push_back(w);
      path_e.push_back(d.edge);
      self(self, s, w);
      path_v.pop_back();
      path_e.pop_back();
      on_path[w] = 0;
    }
  };
  for (int s = 0; s < g.vertex_count(); ++s) {
    on_path[s] = 1;
    path_v = {s};
    path_e.clear();
    rec(rec, s, s);
    on_path[s] = 0;
  }
  std::vector<Circuit> out;
  for (auto& [k, c] : found) out.push_back(std::move(c));
  return out;
}

/// 5-circuits C with g - V(C) (dangling edges kept) 3-edge-colourable.
inline std::vector<Circuit> find_non_removable_5cycles(const CubicGraph& g) {
  std::vector<Circuit> out;
  for (auto& c : circuits_of_length(g, 5))
    if (is_removable_set_colourable(g, c.vertices)) out.push_back(std::move(c));
  return out;
}

struct PairInflation {
  CubicGraph inflated;
  ThreeArray witness;
  EdgeColouring colouring;  // of g - {u, v} with dangling edges kept
  int joining_edge = -1;    // id of the edge uv, in both g and the inflated graph
};

/// Inflates both ends of the edge uv to triangles and extends the colour
/// classes of a colouring of g - {u,v} to a 3-array of the result: uv lies in
/// all three members, the two triangle edges at each end of uv in none, and
/// each opposite triangle edge in the two members avoiding the dangling colour.
inline PairInflation inflate_pair_theorem_check(const CubicGraph& g, int u, int v) {
  int uv = -1, joins = 0;
  for (Dart d : g.darts(u))
    if (!g.is_loop(d.edge) && g.other_endpoint(d.edge, u) == v) {
      uv = d.edge;
      ++joins;
    }
  if (u == v || joins != 1)
    throw GraphError("inflate_pair_theorem_check: vertices " + std::to_string(u) + ", " + std::to_string(v) +
                     " must be joined by exactly one edge");
  for (int x : {u, v})
    for (Dart d : g.darts(x))
      if (g.is_loop(d.edge)) throw GraphError("inflate_pair_theorem_check: loop at vertex " + std::to_string(x));

  auto del = delete_vertices(g, {u, v});
  auto sigma = three_edge_colour(del.pole);
  if (!sigma)
    throw GraphError("inflate_pair_theorem_check: {" + std::to_string(u) + "," + std::to_string(v) +
                     "} is not non-removable");
  std::vector<int> orig_colour(g.edge_count(), 0);
  for (int e = 0; e < del.pole.edge_count(); ++e) orig_colour[del.edge_origin[e]] = sigma->colour[e];

  const int m = g.edge_count();
  const int n = g.vertex_count();
  CubicGraph h = inflate_to_triangle(inflate_to_triangle(g, u), v);
  // triangle edges: u's are m..m+2 on (u, n, n+1); v's are m+3..m+5 on (v, n+2, n+3)
  std::array<ThreeArray, 1> arr{ThreeArray{{EdgeSet(h.edge_count()), EdgeSet(h.edge_count()), EdgeSet(h.edge_count())}}};
  auto& members = arr[0].members;
  for (int e = 0; e < m; ++e)
    if (orig_colour[e]) members[orig_colour[e] - 1].insert(e);
  for (int t = 0; t < 3; ++t) members[t].insert(uv);

  struct Side {
    int centre;
    int first_new_vertex;
    int first_edge;
  };
  for (Side s : {Side{u, n, m}, Side{v, n + 2, m + 3}}) {
    std::array<int, 3> tv{s.centre, s.first_new_vertex, s.first_new_vertex + 1};
    int attach = -1;
    std::vector<int> dangling_colours;
    for (int k = 0; k < 3; ++k)
      for (Dart d : h.darts(tv[k])) {
        if (d.edge >= m) continue;
        if (d.edge == uv) attach = k;
        else dangling_colours.push_back(orig_colour[d.edge]);
      }
    if (dangling_colours.size() != 2 || dangling_colours[0] != dangling_colours[1])
      throw GraphError("inflate_pair_theorem_check: dangling edges at vertex " + std::to_string(s.centre) +
                       " carry different colours; the colouring extends to the whole graph");
    // triangle edge k joins tv[k] and tv[(k+1)%3]; the opposite edge avoids tv[attach]
    int opposite = s.first_edge + (attach + 1) % 3;
    for (int t = 1; t <= 3; ++t)
      if (t != dangling_colours[0]) members[t - 1].insert(opposite);
  }
  auto cov = coverage(h, arr[0]);
  if (cov.counts[0] != 4 || cov.counts[3] != 1 || cov.counts[2] != 2)
    throw std::logic_error("inflate_pair_theorem_check: constructed array does not give the 4-core pattern");
  return PairInflation{std::move(h), std::move(arr[0]), *sigma, uv};
}

/// One vertex with three dangling edges (one into each connector) and two
/// isolated edges, each with one end in A and one in B. Connectors A, B, C of sizes 3, 3, 1.
inline Multipole z_pole() {
  std::vector<std::array<int, 2>> e{{0, kFree}, {0, kFree}, {0, kFree}, {kFree, kFree}, {kFree, kFree}};
  return Multipole(1, std::move(e),
                   {Connector{"A", {{0, 1}, {3, 0}, {4, 0}}}, Connector{"B", {{1, 1}, {3, 1}, {4, 1}}},
                    Connector{"C", {{2, 1}}}});
}

/// Vertex with three dangling edges, connectors "0", "1", "2" of size 1.
inline Multipole trivial_tripole() {
  return Multipole(1, {{0, kFree}, {0, kFree}, {0, kFree}},
                   {Connector{"0", {{0, 1}}}, Connector{"1", {{1, 1}}}, Connector{"2", {{2, 1}}}});
}

/// Isolated edge with connectors "0" (end 0) and "1" (end 1).
inline Multipole trivial_dipole() {
  return Multipole(0, {{kFree, kFree}}, {Connector{"0", {{0, 0}}}, Connector{"1", {{0, 1}}}});
}

/// Deletes the path u-w-x. Severed ends are grouped into connectors named
/// "u", "w", "x" by the deleted vertex they hung from.
inline Multipole remove_path2(const CubicGraph& g, int u, int w, int x) {
  auto adjacent = [&](int a, int b) {
    for (Dart d : g.darts(a))
      if (!g.is_loop(d.edge) && g.other_endpoint(d.edge, a) == b) return true;
    return false;
  };
  if (u == w || w == x || u == x || !adjacent(u, w) || !adjacent(w, x))
    throw GraphError("remove_path2: " + std::to_string(u) + "-" + std::to_string(w) + "-" + std::to_string(x) +
                     " is not a path");
  auto del = delete_vertices(g, {u, w, x});
  std::map<int, std::string> label{{u, "u"}, {w, "w"}, {x, "x"}};
  std::map<std::string, Connector> groups;
  for (Dart d : del.pole.free_ends()) {
    int origin = g.endpoints(del.edge_origin[d.edge])[d.end];
    auto& c = groups[label.at(origin)];
    c.name = label.at(origin);
    c.ends.push_back(d);
  }
  std::vector<Connector> conns;
  for (const char* k : {"u", "w", "x"})
    if (groups.count(k)) conns.push_back(groups[k]);
  return del.pole.with_connectors(std::move(conns));
}

struct SuperpositionParts {
  std::vector<Multipole> parts;  // base vertices 0..n-1, then base edges n..n+m-1
  WiringSpec wiring;             // connector-to-connector along base adjacency
};

/// Parts and default wiring of a superposition. A substituted vertex must be a
/// tripole whose k-th connector faces the vertex's k-th incident edge-end; a
/// substituted edge must be a dipole whose k-th connector faces the edge's end k.
inline SuperpositionParts superposition_parts(const CubicGraph& base, const std::map<int, Multipole>& vertex_subs,
                                              const std::map<int, Multipole>& edge_subs) {
  SuperpositionParts sp;
  const int n = base.vertex_count();
  for (int v = 0; v < n; ++v) {
    auto it = vertex_subs.find(v);
    const Multipole& p = it == vertex_subs.end() ? trivial_tripole() : it->second;
    if (p.connectors().size() != 3) throw GraphError("supervertex " + std::to_string(v) + " is not a tripole");
    sp.parts.push_back(p);
  }
  for (int e = 0; e < base.edge_count(); ++e) {
    auto it = edge_subs.find(e);
    const Multipole& p = it == edge_subs.end() ? trivial_dipole() : it->second;
    if (p.connectors().size() != 2) throw GraphError("superedge " + std::to_string(e) + " is not a dipole");
    sp.parts.push_back(p);
  }
  for (int v = 0; v < n; ++v) {
    const auto& ds = base.darts(v);
    for (int k = 0; k < 3; ++k) {
      const int edge_part = n + ds[k].edge;
      sp.wiring.join(v, sp.parts[v].connectors()[k].name, edge_part,
                     sp.parts[edge_part].connectors()[ds[k].end].name);
    }
  }
  return sp;
}

/// Superposition: junction of the parts under `wiring` (default: along base
/// adjacency). The result must be closed.
inline CubicGraph superpose(const CubicGraph& base, const std::map<int, Multipole>& vertex_subs,
                            const std::map<int, Multipole>& edge_subs,
                            const std::optional<WiringSpec>& wiring = std::nullopt) {
  auto sp = superposition_parts(base, vertex_subs, edge_subs);
  auto pole = junction(sp.parts, wiring ? *wiring : sp.wiring);
  if (!pole.is_closed())
    throw GraphError("superpose: " + std::to_string(pole.free_end_count()) + " free ends left unwired");
  return pole.to_graph();
}

}  // namespace snarkdefect
