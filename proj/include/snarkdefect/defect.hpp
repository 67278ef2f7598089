#pragma once

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "snarkdefect/colouring.hpp"
#include "snarkdefect/edge_set.hpp"
#include "snarkdefect/graph.hpp"
#include "snarkdefect/parallel.hpp"
#include "snarkdefect/structure.hpp"

namespace snarkdefect {

/// Three perfect matchings, repetitions allowed.
struct ThreeArray {
  std::array<PerfectMatching, 3> members;
  friend bool operator==(const ThreeArray&, const ThreeArray&) = default;
};

struct Coverage {
  std::vector<int> multiplicity;  // per edge, 0..3
  std::array<int, 4> counts{};    // counts[k] = edges covered exactly k times
  int uncovered() const { return counts[0]; }
  bool regular() const { return counts[3] == 0; }
};

inline Coverage coverage(const CubicGraph& g, const ThreeArray& a) {
  Coverage c;
  c.multiplicity.assign(g.edge_count(), 0);
  for (int i = 0; i < 3; ++i) {
    std::string why;
    if (!is_perfect_matching(g, a.members[i], &why))
      throw GraphError("3-array member " + std::to_string(i + 1) + " is not a perfect matching: " + why);
    for (int e : a.members[i].ids()) ++c.multiplicity[e];
  }
  for (int k : c.multiplicity) ++c.counts[k];
  return c;
}

enum class CoreComponentKind { EvenAlternatingCircuit, CubicSubdivision };

inline const char* to_string(CoreComponentKind k) {
  return k == CoreComponentKind::EvenAlternatingCircuit ? "even_alternating_circuit" : "cubic_subdivision";
}

struct CoreComponent {
  CoreComponentKind kind;
  std::vector<int> vertices;  // sorted
  std::vector<int> edges;     // sorted
};

/// Subgraph of the edges that are not simply covered.
struct Core {
  EdgeSet uncovered, doubly, triply;
  std::vector<CoreComponent> components;  // ordered by smallest edge id

  EdgeSet edges() const { return uncovered | doubly | triply; }
  bool empty() const { return components.empty(); }
  bool regular() const { return triply.empty(); }
};

/// Thrown when a core violates the local structure every 3-array must have.
class CoreStructureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Checks the structure theorem for cores: every 2-valent core vertex meets one
/// doubly covered and one uncovered core edge, every 3-valent one a triply
/// covered and two uncovered edges, and circuit components alternate with even
/// length. Returns an empty string when all hold, else a description.
inline std::string core_structure_violation(const CubicGraph& g, const Coverage& cov, const Core& core) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    int deg = 0, unc = 0, dbl = 0, tri = 0;
    for (Dart d : g.darts(v)) {
      int k = cov.multiplicity[d.edge];
      if (k == 1) continue;
      ++deg;
      unc += k == 0;
      dbl += k == 2;
      tri += k == 3;
    }
    if (deg == 0) continue;
    if (deg == 2 && !(unc == 1 && dbl == 1))
      return "2-valent core vertex " + std::to_string(v) + " does not meet one uncovered and one doubly covered edge";
    if (deg == 3 && !(tri == 1 && unc == 2))
      return "3-valent core vertex " + std::to_string(v) + " does not meet one triply and two uncovered edges";
    if (deg == 1) return "core vertex " + std::to_string(v) + " has core degree 1";
  }
  bool any_cubic = false;
  for (const auto& comp : core.components) {
    if (comp.kind == CoreComponentKind::CubicSubdivision) {
      any_cubic = true;
      continue;
    }
    if (comp.edges.size() % 2) return "odd core circuit";
    int unc = 0;
    for (int e : comp.edges) unc += cov.multiplicity[e] == 0;
    if (2 * unc != static_cast<int>(comp.edges.size())) return "core circuit does not alternate";
  }
  if (any_cubic == core.triply.empty()) return "core is a union of circuits but has a triply covered edge, or vice versa";
  return {};
}

inline Core core_from_coverage(const CubicGraph& g, const Coverage& cov) {
  const int m = g.edge_count();
  Core core{EdgeSet(m), EdgeSet(m), EdgeSet(m), {}};
  for (int e = 0; e < m; ++e) {
    switch (cov.multiplicity[e]) {
      case 0: core.uncovered.insert(e); break;
      case 2: core.doubly.insert(e); break;
      case 3: core.triply.insert(e); break;
      default: break;
    }
  }
  EdgeSet in_core = core.edges();
  std::vector<char> seen(m, 0);
  for (int e0 = 0; e0 < m; ++e0) {
    if (!in_core.contains(e0) || seen[e0]) continue;
    CoreComponent comp{CoreComponentKind::EvenAlternatingCircuit, {}, {}};
    std::vector<int> stack{e0};
    seen[e0] = 1;
    std::vector<char> vseen(g.vertex_count(), 0);
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      comp.edges.push_back(e);
      for (int v : g.endpoints(e)) {
        if (!vseen[v]) {
          vseen[v] = 1;
          comp.vertices.push_back(v);
        }
        for (Dart d : g.darts(v))
          if (in_core.contains(d.edge) && !seen[d.edge]) {
            seen[d.edge] = 1;
            stack.push_back(d.edge);
          }
      }
    }
    std::sort(comp.edges.begin(), comp.edges.end());
    std::sort(comp.vertices.begin(), comp.vertices.end());
    for (int v : comp.vertices) {
      int deg = 0;
      for (Dart d : g.darts(v)) deg += in_core.contains(d.edge);
      if (deg == 3) comp.kind = CoreComponentKind::CubicSubdivision;
    }
    core.components.push_back(std::move(comp));
  }
  if (auto why = core_structure_violation(g, cov, core); !why.empty()) throw CoreStructureError(why);
  return core;
}

inline Core core_of(const CubicGraph& g, const ThreeArray& a) { return core_from_coverage(g, coverage(g, a)); }

/// A core component is an induced circuit when its vertex set spans no edge
/// of g besides the component's own edges.
inline bool is_induced_circuit(const CubicGraph& g, const CoreComponent& comp) {
  if (comp.kind != CoreComponentKind::EvenAlternatingCircuit) return false;
  std::vector<char> inside(g.vertex_count(), 0);
  for (int v : comp.vertices) inside[v] = 1;
  int spanned = 0;
  for (int e = 0; e < g.edge_count(); ++e)
    if (inside[g.endpoints(e)[0]] && inside[g.endpoints(e)[1]]) ++spanned;
  return spanned == static_cast<int>(comp.edges.size()) && comp.edges.size() == comp.vertices.size();
}

struct SearchBudget {
  std::size_t max_matchings = std::size_t{1} << 20;
  std::uint64_t max_triples = std::numeric_limits<std::uint64_t>::max();
  unsigned threads = 0;                // 0 = hardware concurrency
  bool use_snark_lower_bound = true;   // stop early once a snark reaches 3 uncovered edges
};

struct DefectResult {
  std::optional<int> value;  // nullopt: no 3-array of the required kind found
  std::optional<ThreeArray> witness;
  std::array<int, 3> witness_indices{};  // positions in the sorted matching list
  bool exhaustive = false;
  bool regular_required = false;
  std::size_t matching_count = 0;

  /// Exhaustive search found no regular 3-array at all.
  bool none_found() const { return exhaustive && !value.has_value(); }
};

namespace detail {

struct TripleOutcome {
  int value = std::numeric_limits<int>::max();
  int a = -1, b = -1, c = -1;
  bool budget_hit = false;
};

template <int W>
TripleOutcome triple_search(const std::vector<PerfectMatching>& pms, int edge_count, int half, bool regular,
                            int lower_bound, std::uint64_t budget, unsigned threads) {
  using Word = std::array<std::uint64_t, W>;
  const int N = static_cast<int>(pms.size());
  std::vector<Word> ms(N);
  for (int i = 0; i < N; ++i) {
    ms[i].fill(0);
    const auto& w = pms[i].words();
    for (std::size_t k = 0; k < w.size(); ++k) ms[i][k] = w[k];
  }
  auto pc = [](const Word& x) {
    int c = 0;
    for (int k = 0; k < W; ++k) c += std::popcount(x[k]);
    return c;
  };

  std::vector<std::uint64_t> base(N + 1, 0);
  for (int a = 0; a < N; ++a) {
    std::uint64_t k = static_cast<std::uint64_t>(N - a);
    base[a + 1] = base[a] + k * (k + 1) / 2;
  }

  std::vector<TripleOutcome> chunk(N);
  std::atomic<int> global_best{std::numeric_limits<int>::max()};
  std::atomic<int> stop_at{N};

  parallel_for(N, threads, [&](int a) {
    TripleOutcome& out = chunk[a];
    if (a > stop_at.load(std::memory_order_relaxed)) return;
    std::uint64_t rank = base[a];
    for (int b = a; b < N; ++b) {
      const std::uint64_t row = static_cast<std::uint64_t>(N - b);
      if (rank >= budget) {
        out.budget_hit = true;
        return;
      }
      if (a > stop_at.load(std::memory_order_relaxed)) return;
      Word uni, inter;
      for (int k = 0; k < W; ++k) {
        uni[k] = ms[a][k] | ms[b][k];
        inter[k] = ms[a][k] & ms[b][k];
      }
      const int bound = edge_count - pc(uni) - half;
      if (bound > global_best.load(std::memory_order_relaxed) || bound >= out.value) {
        rank += row;
        continue;
      }
      int c_end = N;
      if (budget - rank < row) {
        c_end = b + static_cast<int>(budget - rank);
        out.budget_hit = true;
      }
      for (int c = b; c < c_end; ++c) {
        if (regular) {
          bool meets = false;
          for (int k = 0; k < W; ++k) meets |= (inter[k] & ms[c][k]) != 0;
          if (meets) continue;
        }
        Word u3;
        for (int k = 0; k < W; ++k) u3[k] = uni[k] | ms[c][k];
        int unc = edge_count - pc(u3);
        if (unc < out.value) {
          out.value = unc;
          out.a = a;
          out.b = b;
          out.c = c;
          atomic_min(global_best, unc);
          if (unc <= lower_bound) {
            atomic_min(stop_at, a);
            out.budget_hit = false;
            return;
          }
        }
      }
      if (out.budget_hit) return;
      rank += row;
    }
  });

  TripleOutcome best;
  for (int a = 0; a < N; ++a) {
    const auto& o = chunk[a];
    if (a > stop_at.load()) break;
    if (o.a >= 0 && o.value < best.value) best = TripleOutcome{o.value, o.a, o.b, o.c, false};
  }
  bool early = best.a >= 0 && best.value <= lower_bound;
  if (!early)
    for (const auto& o : chunk) best.budget_hit |= o.budget_hit;
  return best;
}

inline TripleOutcome dispatch_triple_search(const std::vector<PerfectMatching>& pms, int edge_count, int half,
                                            bool regular, int lower_bound, std::uint64_t budget, unsigned threads) {
  const int words = (edge_count + 63) / 64;
  if (words <= 1) return triple_search<1>(pms, edge_count, half, regular, lower_bound, budget, threads);
  if (words <= 2) return triple_search<2>(pms, edge_count, half, regular, lower_bound, budget, threads);
  if (words <= 4) return triple_search<4>(pms, edge_count, half, regular, lower_bound, budget, threads);
  if (words <= 8) return triple_search<8>(pms, edge_count, half, regular, lower_bound, budget, threads);
  throw SizeLimitError("defect search supports at most 512 edges, graph has " + std::to_string(edge_count));
}

inline DefectResult run_defect_search(const CubicGraph& g, const SearchBudget& budget, bool regular,
                                      const std::vector<PerfectMatching>* precomputed) {
  if (!is_bridgeless(g)) throw GraphError("defect is only defined here for connected bridgeless cubic graphs");
  MatchingEnumeration en;
  if (precomputed) {
    en.matchings = *precomputed;
  } else {
    en = enumerate_perfect_matchings(g, budget.max_matchings);
  }
  DefectResult r;
  r.regular_required = regular;
  r.matching_count = en.matchings.size();
  int lower_bound = 0;
  if (budget.use_snark_lower_bound && !three_edge_colour(g)) lower_bound = 3;
  auto out = dispatch_triple_search(en.matchings, g.edge_count(), g.vertex_count() / 2, regular, lower_bound,
                                    budget.max_triples, budget.threads);
  r.exhaustive = en.complete && !out.budget_hit;
  if (out.a >= 0) {
    r.value = out.value;
    r.witness = ThreeArray{{en.matchings[out.a], en.matchings[out.b], en.matchings[out.c]}};
    r.witness_indices = {out.a, out.b, out.c};
  }
  return r;
}

}  // namespace detail

/// Colouring defect: fewest uncovered edges over all 3-arrays, with the
/// lexicographically least optimal witness when the search is exhaustive.
inline DefectResult defect(const CubicGraph& g, const SearchBudget& budget = {},
                           const std::vector<PerfectMatching>* matchings = nullptr) {
  return detail::run_defect_search(g, budget, false, matchings);
}

/// Regular defect: as defect, restricted to 3-arrays with empty common intersection.
inline DefectResult regular_defect(const CubicGraph& g, const SearchBudget& budget = {},
                                   const std::vector<PerfectMatching>* matchings = nullptr) {
  return detail::run_defect_search(g, budget, true, matchings);
}

/// rdf >= girth/2 and every witness-core circuit is even with length >= girth.
/// Vacuously true for an empty core.
inline bool check_girth_bound(const CubicGraph& g, const DefectResult& r) {
  if (!r.regular_required || !r.witness || !r.value) throw GraphError("check_girth_bound needs a regular-defect witness");
  auto core = core_of(g, *r.witness);
  if (core.empty()) return true;
  const int gi = girth(g);
  if (2 * *r.value < gi) return false;
  for (const auto& comp : core.components) {
    if (comp.kind != CoreComponentKind::EvenAlternatingCircuit) return false;
    int len = static_cast<int>(comp.edges.size());
    if (len % 2 || len < gi) return false;
  }
  return true;
}

/// (df = 3) <=> (rdf = 3), from exhaustive results.
inline bool verify_corollary_rdf3(const DefectResult& df, const DefectResult& rdf) {
  if (!df.exhaustive || !rdf.exhaustive) throw GraphError("verify_corollary_rdf3 requires exhaustive results");
  bool df3 = df.value && *df.value == 3;
  bool rdf3 = rdf.value && *rdf.value == 3;
  return df3 == rdf3;
}

inline bool verify_corollary_rdf3(const CubicGraph& g, const SearchBudget& budget = {}) {
  auto pms = enumerate_perfect_matchings(g, budget.max_matchings);
  if (!pms.complete) throw GraphError("verify_corollary_rdf3 requires exhaustive results");
  return verify_corollary_rdf3(defect(g, budget, &pms.matchings), regular_defect(g, budget, &pms.matchings));
}

}  // namespace snarkdefect
