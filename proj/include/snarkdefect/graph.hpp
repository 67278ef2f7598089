#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace snarkdefect {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exact algorithm is asked to run past its documented size gate.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFree = -1;

/// One end of an edge: (edge id, end index 0 or 1).
struct Dart {
  int edge = 0;
  int end = 0;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

inline std::string to_string(Dart d) {
  return "e" + std::to_string(d.edge) + "." + std::to_string(d.end);
}

/// A named group of free ends of a multipole.
struct Connector {
  std::string name;
  std::vector<Dart> ends;
  friend bool operator==(const Connector&, const Connector&) = default;
};

namespace detail {

// Builds per-vertex incidence lists ordered by (edge, end); checks every vertex
// carries exactly three edge-ends.
inline std::vector<std::array<Dart, 3>> build_incidence(int vertex_count,
                                                        const std::vector<std::array<int, 2>>& ends) {
  if (vertex_count < 0) throw GraphError("negative vertex count");
  std::vector<std::vector<Dart>> inc(vertex_count);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    for (int k = 0; k < 2; ++k) {
      int v = ends[e][k];
      if (v == kFree) continue;
      if (v < 0 || v >= vertex_count)
        throw GraphError("edge " + std::to_string(e) + " references vertex " + std::to_string(v) +
                         " outside 0.." + std::to_string(vertex_count - 1));
      inc[v].push_back({e, k});
    }
  }
  std::vector<std::array<Dart, 3>> out(vertex_count);
  for (int v = 0; v < vertex_count; ++v) {
    if (inc[v].size() != 3)
      throw GraphError("vertex " + std::to_string(v) + " has degree " + std::to_string(inc[v].size()) +
                       ", expected 3");
    std::copy(inc[v].begin(), inc[v].end(), out[v].begin());
  }
  return out;
}

}  // namespace detail

/// Cubic multigraph with stable, dense edge ids. Loops and parallel edges allowed.
class CubicGraph {
 public:
  CubicGraph() = default;

  CubicGraph(int vertex_count, std::vector<std::array<int, 2>> edges)
      : n_(vertex_count), ends_(std::move(edges)) {
    for (std::size_t e = 0; e < ends_.size(); ++e)
      for (int v : ends_[e])
        if (v == kFree) throw GraphError("edge " + std::to_string(e) + " has a free end; use Multipole");
    incidence_ = detail::build_incidence(n_, ends_);
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(ends_.size()); }

  const std::array<int, 2>& endpoints(int e) const { return ends_[e]; }
  const std::vector<std::array<int, 2>>& edges() const { return ends_; }
  const std::array<Dart, 3>& darts(int v) const { return incidence_[v]; }

  int vertex_of(Dart d) const { return ends_[d.edge][d.end]; }
  int other_endpoint(int e, int v) const { return ends_[e][0] == v ? ends_[e][1] : ends_[e][0]; }
  bool is_loop(int e) const { return ends_[e][0] == ends_[e][1]; }

  friend bool operator==(const CubicGraph& a, const CubicGraph& b) {
    return a.n_ == b.n_ && a.ends_ == b.ends_;
  }

 private:
  int n_ = 0;
  std::vector<std::array<int, 2>> ends_;
  std::vector<std::array<Dart, 3>> incidence_;
};

/// Cubic graph fragment whose edge ends may be free; free ends are partitioned
/// into connectors.
class Multipole {
 public:
  Multipole() = default;

  Multipole(int vertex_count, std::vector<std::array<int, 2>> edges, std::vector<Connector> connectors = {})
      : n_(vertex_count), ends_(std::move(edges)), connectors_(std::move(connectors)) {
    incidence_ = detail::build_incidence(n_, ends_);
    std::map<Dart, int> seen;
    for (const auto& c : connectors_) {
      for (Dart d : c.ends) {
        if (d.edge < 0 || d.edge >= edge_count() || d.end < 0 || d.end > 1)
          throw GraphError("connector " + c.name + " references nonexistent end " + to_string(d));
        if (ends_[d.edge][d.end] != kFree)
          throw GraphError("connector " + c.name + " lists " + to_string(d) + " which is not free");
        if (++seen[d] > 1) throw GraphError("free end " + to_string(d) + " lies in more than one connector");
      }
    }
    if (!connectors_.empty() && static_cast<int>(seen.size()) != free_end_count())
      throw GraphError("connectors cover " + std::to_string(seen.size()) + " of " +
                       std::to_string(free_end_count()) + " free ends");
  }

  explicit Multipole(const CubicGraph& g) : Multipole(g.vertex_count(), g.edges()) {}

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(ends_.size()); }
  const std::array<int, 2>& endpoints(int e) const { return ends_[e]; }
  const std::vector<std::array<int, 2>>& edges() const { return ends_; }
  const std::array<Dart, 3>& darts(int v) const { return incidence_[v]; }
  const std::vector<Connector>& connectors() const { return connectors_; }

  bool is_free(Dart d) const { return ends_[d.edge][d.end] == kFree; }

  std::vector<Dart> free_ends() const {
    std::vector<Dart> out;
    for (int e = 0; e < edge_count(); ++e)
      for (int k = 0; k < 2; ++k)
        if (ends_[e][k] == kFree) out.push_back({e, k});
    return out;
  }
  int free_end_count() const { return static_cast<int>(free_ends().size()); }
  bool is_closed() const { return free_end_count() == 0; }

  /// Same multipole with a new connector partition.
  Multipole with_connectors(std::vector<Connector> connectors) const {
    return Multipole(n_, ends_, std::move(connectors));
  }

  const Connector& connector(const std::string& name) const {
    for (const auto& c : connectors_)
      if (c.name == name) return c;
    throw GraphError("no connector named " + name);
  }

  CubicGraph to_graph() const {
    if (!is_closed()) throw GraphError("multipole has free ends; not a graph");
    return CubicGraph(n_, ends_);
  }

 private:
  int n_ = 0;
  std::vector<std::array<int, 2>> ends_;
  std::vector<Connector> connectors_;
  std::vector<std::array<Dart, 3>> incidence_;
};

/// Result of deleting vertices from a graph while keeping severed edges as dangling edges.
struct VertexDeletion {
  Multipole pole;
  std::vector<int> edge_origin;    // pole edge id -> original edge id
  std::vector<int> vertex_origin;  // pole vertex id -> original vertex id
};

/// Deletes `removed` from g. Edges with exactly one deleted endpoint become
/// dangling (free end where the deleted vertex was); edges with both endpoints
/// deleted disappear. Remaining vertices and edges keep their relative order.
/// All free ends go into one connector named `connector_name`.
inline VertexDeletion delete_vertices(const CubicGraph& g, const std::vector<int>& removed,
                                      const std::string& connector_name = "S") {
  std::vector<char> gone(g.vertex_count(), 0);
  for (int v : removed) {
    if (v < 0 || v >= g.vertex_count()) throw GraphError("vertex " + std::to_string(v) + " out of range");
    gone[v] = 1;
  }
  VertexDeletion out;
  std::vector<int> new_id(g.vertex_count(), kFree);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!gone[v]) {
      new_id[v] = static_cast<int>(out.vertex_origin.size());
      out.vertex_origin.push_back(v);
    }
  std::vector<std::array<int, 2>> edges;
  Connector free_conn{connector_name, {}};
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    if (gone[a] && gone[b]) continue;
    int id = static_cast<int>(edges.size());
    edges.push_back({new_id[a], new_id[b]});
    out.edge_origin.push_back(e);
    if (gone[a]) free_conn.ends.push_back({id, 0});
    if (gone[b]) free_conn.ends.push_back({id, 1});
  }
  std::vector<Connector> conns;
  if (!free_conn.ends.empty()) conns.push_back(std::move(free_conn));
  out.pole = Multipole(static_cast<int>(out.vertex_origin.size()), std::move(edges), std::move(conns));
  return out;
}

}  // namespace snarkdefect
