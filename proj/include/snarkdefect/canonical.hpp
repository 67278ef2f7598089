#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "snarkdefect/graph.hpp"

namespace snarkdefect {

inline constexpr int kCanonicalMaxVertices = 64;

namespace detail {

// Equitable refinement. `cells` is an ordered partition given as colour per
// vertex (colour = index of cell start); refines until stable.
inline std::vector<int> refine(const std::vector<std::vector<int>>& adj_mult, std::vector<int> colour) {
  const int n = static_cast<int>(colour.size());
  while (true) {
    // signature: (current colour, sorted multiset of (neighbour colour, multiplicity))
    std::vector<std::pair<std::pair<int, std::vector<std::pair<int, int>>>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::map<int, int> counts;
      for (int w = 0; w < n; ++w)
        if (adj_mult[v][w]) counts[colour[w]] += adj_mult[v][w];
      sig[v] = {{colour[v], {counts.begin(), counts.end()}}, v};
    }
    std::sort(sig.begin(), sig.end());
    std::vector<int> next(n);
    int cell_start = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[i].first != sig[i - 1].first) cell_start = i;
      next[sig[i].second] = cell_start;
    }
    if (next == colour) return colour;
    colour = std::move(next);
  }
}

}  // namespace detail

/// Canonical sorted edge list under a canonical labeling: two multigraphs are
/// isomorphic iff their canonical forms are equal. Exact individualization-
/// refinement without automorphism pruning; gated to small graphs.
inline std::vector<std::array<int, 2>> canonical_form(int vertex_count,
                                                      const std::vector<std::array<int, 2>>& edges) {
  if (vertex_count > kCanonicalMaxVertices)
    throw SizeLimitError("canonical_form: " + std::to_string(vertex_count) + " vertices exceeds bound " +
                         std::to_string(kCanonicalMaxVertices));
  const int n = vertex_count;
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (auto [a, b] : edges) {
    ++adj[a][b];
    if (a != b) ++adj[b][a];
  }
  std::vector<std::array<int, 2>> best;
  bool have = false;

  auto certificate = [&](const std::vector<int>& label) {
    std::vector<std::array<int, 2>> c;
    c.reserve(edges.size());
    for (auto [a, b] : edges) {
      int x = label[a], y = label[b];
      c.push_back({std::min(x, y), std::max(x, y)});
    }
    std::sort(c.begin(), c.end());
    return c;
  };

  auto search = [&](auto&& self, std::vector<int> colour) -> void {
    colour = detail::refine(adj, std::move(colour));
    // first non-singleton cell: smallest colour value shared by >1 vertex
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n; ++v) cells[colour[v]].push_back(v);
    const std::vector<int>* target = nullptr;
    int target_colour = 0;
    for (const auto& [c, members] : cells)
      if (members.size() > 1) {
        target = &members;
        target_colour = c;
        break;
      }
    if (!target) {
      auto cert = certificate(colour);
      if (!have || cert < best) {
        best = std::move(cert);
        have = true;
      }
      return;
    }
    for (int v : *target) {
      auto next = colour;
      // individualized vertex precedes the rest of its cell
      for (int w = 0; w < n; ++w)
        if (colour[w] == target_colour && w != v) next[w] = target_colour + 1;
      self(self, std::move(next));
    }
  };
  search(search, std::vector<int>(n, 0));
  return best;
}

inline std::vector<std::array<int, 2>> canonical_form(const CubicGraph& g) {
  return canonical_form(g.vertex_count(), g.edges());
}

inline bool isomorphic(const CubicGraph& a, const CubicGraph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         canonical_form(a) == canonical_form(b);
}

}  // namespace snarkdefect
