#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "snarkdefect/edge_set.hpp"
#include "snarkdefect/graph.hpp"
#include "snarkdefect/structure.hpp"

namespace snarkdefect {

using PerfectMatching = EdgeSet;

/// True iff every vertex of g meets exactly one edge of m (loops never qualify).
inline bool is_perfect_matching(const CubicGraph& g, const EdgeSet& m, std::string* why = nullptr) {
  if (m.universe() != g.edge_count()) {
    if (why) *why = "edge set universe does not match graph";
    return false;
  }
  std::vector<int> hits(g.vertex_count(), 0);
  for (int e : m.ids()) {
    if (g.is_loop(e)) {
      if (why) *why = "loop e" + std::to_string(e) + " in matching";
      return false;
    }
    ++hits[g.endpoints(e)[0]];
    ++hits[g.endpoints(e)[1]];
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (hits[v] != 1) {
      if (why) *why = "vertex " + std::to_string(v) + (hits[v] ? " covered " + std::to_string(hits[v]) + " times" : " uncovered");
      return false;
    }
  return true;
}

struct MatchingEnumeration {
  std::vector<PerfectMatching> matchings;  // lexicographic order of sorted edge-id lists
  bool complete = true;                    // false when stopped at the count limit
};

/// All perfect matchings. Backtracks on the lowest uncovered vertex, branching
/// over its incident non-loop edges; output is sorted lexicographically.
/// Stops after `limit` matchings and flags the result incomplete.
inline MatchingEnumeration enumerate_perfect_matchings(const CubicGraph& g,
                                                       std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  MatchingEnumeration out;
  const int n = g.vertex_count();
  if (n % 2) return out;
  std::vector<char> used(n, 0);
  EdgeSet cur(g.edge_count());
  auto rec = [&](auto&& self, int from) -> void {
    if (!out.complete) return;
    int v = from;
    while (v < n && used[v]) ++v;
    if (v == n) {
      if (out.matchings.size() >= limit) {
        out.complete = false;
        return;
      }
      out.matchings.push_back(cur);
      return;
    }
    used[v] = 1;
    int last_edge = -1;
    for (Dart d : g.darts(v)) {
      if (d.edge == last_edge || g.is_loop(d.edge)) continue;
      last_edge = d.edge;
      int w = g.other_endpoint(d.edge, v);
      if (used[w]) continue;
      used[w] = 1;
      cur.insert(d.edge);
      self(self, v + 1);
      cur.erase(d.edge);
      used[w] = 0;
    }
    used[v] = 0;
  };
  rec(rec, 0);
  std::sort(out.matchings.begin(), out.matchings.end());
  return out;
}

/// Total assignment edge id -> colour in {1,2,3}. Colours are the nonzero
/// elements of Z2 x Z2 via 1=(0,1), 2=(1,0), 3=(1,1), so the group sum is XOR.
struct EdgeColouring {
  std::vector<int> colour;
  friend bool operator==(const EdgeColouring&, const EdgeColouring&) = default;
};

/// Proper at every vertex: the three incident edge-ends carry distinct colours (XOR zero).
inline bool is_valid_colouring(const Multipole& m, const EdgeColouring& c, std::string* why = nullptr) {
  if (static_cast<int>(c.colour.size()) != m.edge_count()) {
    if (why) *why = "colouring size does not match edge count";
    return false;
  }
  for (int e = 0; e < m.edge_count(); ++e)
    if (c.colour[e] < 1 || c.colour[e] > 3) {
      if (why) *why = "edge " + std::to_string(e) + " has colour " + std::to_string(c.colour[e]);
      return false;
    }
  for (int v = 0; v < m.vertex_count(); ++v) {
    int sum = 0;
    for (Dart d : m.darts(v)) sum ^= c.colour[d.edge];
    const auto& ds = m.darts(v);
    bool distinct = c.colour[ds[0].edge] != c.colour[ds[1].edge] && c.colour[ds[0].edge] != c.colour[ds[2].edge] &&
                    c.colour[ds[1].edge] != c.colour[ds[2].edge];
    if (sum != 0 || !distinct) {
      if (why) *why = "Kirchhoff violated at vertex " + std::to_string(v);
      return false;
    }
  }
  return true;
}

inline bool is_valid_colouring(const CubicGraph& g, const EdgeColouring& c, std::string* why = nullptr) {
  return is_valid_colouring(Multipole(g), c, why);
}

namespace detail {

// Backtracking 3-edge-colouring over a multipole. Variable order: the
// uncoloured edge with the fewest remaining colours, ties to the smallest id;
// values tried in order 1,2,3.
class ColouringSearch {
 public:
  explicit ColouringSearch(const Multipole& m) : m_(m), colour_(m.edge_count(), 0) {
    for (int v = 0; v < m.vertex_count(); ++v) {
      const auto& ds = m.darts(v);
      if (ds[0].edge == ds[1].edge || ds[1].edge == ds[2].edge || ds[0].edge == ds[2].edge) has_loop_ = true;
    }
  }

  // Calls visit for each colouring until it returns false. `break_symmetry`
  // fixes the first chosen edge to colour 1.
  void run(const std::function<bool(const std::vector<int>&)>& visit, bool break_symmetry) {
    if (has_loop_) return;
    stop_ = false;
    symmetric_ = break_symmetry;
    descend(visit, 0);
  }

 private:
  int used_mask(int e) const {
    int mask = 0;
    for (int k = 0; k < 2; ++k) {
      int v = m_.endpoints(e)[k];
      if (v == kFree) continue;
      for (Dart d : m_.darts(v))
        if (d.edge != e && colour_[d.edge]) mask |= 1 << colour_[d.edge];
    }
    return mask;
  }

  void descend(const std::function<bool(const std::vector<int>&)>& visit, int depth) {
    if (stop_) return;
    int pick = -1, pick_mask = 0, pick_options = 4;
    for (int e = 0; e < m_.edge_count(); ++e) {
      if (colour_[e]) continue;
      int mask = used_mask(e);
      int options = 3 - std::popcount(static_cast<unsigned>(mask));
      if (options < pick_options) {
        pick = e;
        pick_mask = mask;
        pick_options = options;
        if (options == 0) return;
      }
    }
    if (pick < 0) {
      if (!visit(colour_)) stop_ = true;
      return;
    }
    for (int c = 1; c <= 3 && !stop_; ++c) {
      if (pick_mask & (1 << c)) continue;
      if (symmetric_ && depth == 0 && c != 1) break;
      colour_[pick] = c;
      descend(visit, depth + 1);
      colour_[pick] = 0;
    }
  }

  const Multipole& m_;
  std::vector<int> colour_;
  bool has_loop_ = false;
  bool stop_ = false;
  bool symmetric_ = false;
};

}  // namespace detail

/// First 3-edge-colouring in the solver's deterministic order, or nullopt.
/// Dangling and isolated edges are coloured as well.
inline std::optional<EdgeColouring> three_edge_colour(const Multipole& m) {
  std::optional<EdgeColouring> out;
  detail::ColouringSearch(m).run(
      [&](const std::vector<int>& c) {
        out = EdgeColouring{c};
        return false;
      },
      true);
  return out;
}

inline std::optional<EdgeColouring> three_edge_colour(const CubicGraph& g) { return three_edge_colour(Multipole(g)); }

/// Visits every 3-edge-colouring (no symmetry breaking) until visit returns false.
inline void for_each_colouring(const Multipole& m, const std::function<bool(const EdgeColouring&)>& visit) {
  detail::ColouringSearch(m).run([&](const std::vector<int>& c) { return visit(EdgeColouring{c}); }, false);
}

/// Colour classes of a colouring of a graph: classes[t-1] = edges of colour t.
inline std::array<EdgeSet, 3> colour_classes(const EdgeColouring& c) {
  const int m = static_cast<int>(c.colour.size());
  std::array<EdgeSet, 3> classes{EdgeSet(m), EdgeSet(m), EdgeSet(m)};
  for (int e = 0; e < m; ++e) classes[c.colour[e] - 1].insert(e);
  return classes;
}

struct ParityReport {
  bool holds = false;
  int free_ends = 0;
  std::array<int, 3> colour_counts{};  // free ends carrying colour 1, 2, 3
  int sum = 0;                         // Z2 x Z2 sum over free ends, as 0..3
};

/// Checks that the colours on the free ends sum to zero and each colour's
/// free-end count has the parity of the number of free ends.
inline ParityReport verify_parity(const Multipole& m, const EdgeColouring& c) {
  std::string why;
  if (!is_valid_colouring(m, c, &why)) throw GraphError("verify_parity: invalid colouring: " + why);
  ParityReport r;
  for (Dart d : m.free_ends()) {
    int col = c.colour[d.edge];
    ++r.free_ends;
    ++r.colour_counts[col - 1];
    r.sum ^= col;
  }
  r.holds = r.sum == 0;
  for (int k : r.colour_counts) r.holds = r.holds && (k % 2 == r.free_ends % 2);
  return r;
}

/// 2-connected and not 3-edge-colourable.
inline bool is_snark(const CubicGraph& g) { return is_two_connected(g) && !three_edge_colour(g).has_value(); }

/// Circuits of the spanning 2-regular subgraph g - M, as edge lists.
inline std::vector<std::vector<int>> complement_circuits(const CubicGraph& g, const EdgeSet& matching) {
  std::vector<std::vector<int>> circuits;
  std::vector<char> seen(g.edge_count(), 0);
  for (int e0 = 0; e0 < g.edge_count(); ++e0) {
    if (matching.contains(e0) || seen[e0]) continue;
    std::vector<int> circ;
    int e = e0;
    int v = g.endpoints(e0)[0];
    while (!seen[e]) {
      seen[e] = 1;
      circ.push_back(e);
      int w = g.other_endpoint(e, v);
      int next = -1;
      for (Dart d : g.darts(w))
        if (!matching.contains(d.edge) && d.edge != e) next = d.edge;
      if (next < 0) {
        if (!g.is_loop(e)) throw GraphError("complement of matching is not 2-regular");
        break;
      }
      v = w;
      e = next;
    }
    circuits.push_back(std::move(circ));
  }
  return circuits;
}

/// Minimum number of odd circuits in g - M over perfect matchings M.
inline int oddness(const CubicGraph& g) {
  auto pms = enumerate_perfect_matchings(g).matchings;
  if (pms.empty()) throw GraphError("oddness: graph has no perfect matching");
  int best = std::numeric_limits<int>::max();
  for (const auto& m : pms) {
    int odd = 0;
    for (const auto& c : complement_circuits(g, m)) odd += c.size() % 2;
    best = std::min(best, odd);
    if (best == 0) break;
  }
  return best;
}

}  // namespace snarkdefect
