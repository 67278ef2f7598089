#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "snarkdefect/graph.hpp"

namespace snarkdefect {

/// Length of a shortest circuit; loops count 1 and parallel pairs 2.
/// Returns 0 for a graph without circuits (only the empty graph, for cubic input).
inline int girth(const CubicGraph& g) {
  const int n = g.vertex_count();
  int best = std::numeric_limits<int>::max();
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.is_loop(e)) return 1;
  std::vector<int> dist(n), parent_edge(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    parent_edge[s] = -1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (2 * dist[u] + 1 >= best) break;
      for (Dart d : g.darts(u)) {
        if (d.edge == parent_edge[u]) continue;
        int w = g.endpoints(d.edge)[1 - d.end];
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent_edge[w] = d.edge;
          q.push(w);
        } else {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Tarjan lowpoint pass over the multigraph; reports bridge edges and articulation vertices.
struct LowpointResult {
  std::vector<int> bridges;
  std::vector<int> articulation_points;
  int components = 0;
};

inline LowpointResult lowpoint(const CubicGraph& g) {
  const int n = g.vertex_count();
  LowpointResult r;
  std::vector<int> disc(n, -1), low(n, 0), parent_edge(n, -1);
  std::vector<char> is_cut(n, 0);
  int timer = 0;
  struct Frame {
    int v;
    int next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    ++r.components;
    int root_children = 0;
    std::vector<Frame> stack{{root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& f = stack.back();
      int v = f.v;
      if (f.next < 3) {
        Dart d = g.darts(v)[f.next++];
        if (d.edge == parent_edge[v] || g.is_loop(d.edge)) continue;
        int w = g.endpoints(d.edge)[1 - d.end];
        if (disc[w] < 0) {
          parent_edge[w] = d.edge;
          disc[w] = low[w] = timer++;
          if (v == root) ++root_children;
          stack.push_back({w, 0});
        } else {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        stack.pop_back();
        if (stack.empty()) break;
        int p = stack.back().v;
        low[p] = std::min(low[p], low[v]);
        if (low[v] > disc[p]) r.bridges.push_back(parent_edge[v]);
        if (p != root && low[v] >= disc[p]) is_cut[p] = 1;
      }
    }
    if (root_children > 1) is_cut[root] = 1;
  }
  std::sort(r.bridges.begin(), r.bridges.end());
  for (int v = 0; v < n; ++v)
    if (is_cut[v]) r.articulation_points.push_back(v);
  return r;
}

}  // namespace detail

inline bool is_connected(const CubicGraph& g) { return g.vertex_count() > 0 && detail::lowpoint(g).components == 1; }

inline std::vector<int> bridges(const CubicGraph& g) { return detail::lowpoint(g).bridges; }

/// Connected with no cut edge.
inline bool is_bridgeless(const CubicGraph& g) {
  auto r = detail::lowpoint(g);
  return r.components == 1 && r.bridges.empty();
}

/// Connected, without cut vertices or cut edges.
inline bool is_two_connected(const CubicGraph& g) {
  auto r = detail::lowpoint(g);
  return r.components == 1 && r.articulation_points.empty() && r.bridges.empty();
}

inline std::optional<std::vector<int>> bipartition(const CubicGraph& g) {
  std::vector<int> side(g.vertex_count(), -1);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (Dart d : g.darts(u)) {
        int w = g.endpoints(d.edge)[1 - d.end];
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          stack.push_back(w);
        } else if (side[w] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

inline bool is_bipartite(const CubicGraph& g) { return bipartition(g).has_value(); }

/// Direct product with K2. Vertex (v,i) has id v + i*n; edge e = uv yields
/// edge 2e = (u,0)(v,1) and edge 2e+1 = (u,1)(v,0).
inline CubicGraph bipartite_double(const CubicGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::array<int, 2>> edges;
  edges.reserve(2 * g.edge_count());
  for (auto [u, v] : g.edges()) {
    edges.push_back({u, v + n});
    edges.push_back({u + n, v});
  }
  return CubicGraph(2 * n, std::move(edges));
}

inline constexpr int kCyclicConnectivityMaxVertices = 40;

/// Smallest size of a cycle-separating edge cut, by exact enumeration of edge
/// subsets of size 0..limit. nullopt means no such cut of size <= limit exists.
inline std::optional<int> cyclic_edge_connectivity(const CubicGraph& g, int limit,
                                                   int max_vertices = kCyclicConnectivityMaxVertices) {
  if (g.vertex_count() > max_vertices)
    throw SizeLimitError("cyclic_edge_connectivity: " + std::to_string(g.vertex_count()) +
                         " vertices exceeds exact-enumeration bound " + std::to_string(max_vertices));
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::vector<char> removed(m, 0);
  std::vector<int> vcount(n), ecount(n);

  auto separates = [&]() {
    detail::UnionFind uf(n);
    for (int e = 0; e < m; ++e)
      if (!removed[e]) uf.unite(g.endpoints(e)[0], g.endpoints(e)[1]);
    std::fill(vcount.begin(), vcount.end(), 0);
    std::fill(ecount.begin(), ecount.end(), 0);
    for (int v = 0; v < n; ++v) ++vcount[uf.find(v)];
    for (int e = 0; e < m; ++e)
      if (!removed[e]) ++ecount[uf.find(g.endpoints(e)[0])];
    int cyclic = 0;
    for (int v = 0; v < n; ++v)
      if (vcount[v] > 0 && ecount[v] >= vcount[v]) ++cyclic;
    return cyclic >= 2;
  };

  for (int k = 0; k <= std::min(limit, m); ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      for (int i : idx) removed[i] = 1;
      bool hit = separates();
      for (int i : idx) removed[i] = 0;
      if (hit) return k;
      int i = k - 1;
      while (i >= 0 && idx[i] == m - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace snarkdefect
