#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "snarkdefect/graph.hpp"
#include "snarkdefect/io.hpp"

namespace snarkdefect {

/// A free end of one part of a junction.
struct PartEnd {
  int part = 0;
  Dart dart;
  friend auto operator<=>(const PartEnd&, const PartEnd&) = default;
};

/// Fuse two free ends into one edge.
struct JoinEnds {
  PartEnd a, b;
};

/// Fuse the i-th end of one connector with the i-th end of another; sizes must match.
struct JoinConnectors {
  int part_a = 0;
  std::string connector_a;
  int part_b = 0;
  std::string connector_b;
};

struct WiringSpec {
  std::vector<std::variant<JoinEnds, JoinConnectors>> directives;

  WiringSpec& join(PartEnd a, PartEnd b) {
    directives.emplace_back(JoinEnds{a, b});
    return *this;
  }
  WiringSpec& join(int part_a, std::string conn_a, int part_b, std::string conn_b) {
    directives.emplace_back(JoinConnectors{part_a, std::move(conn_a), part_b, std::move(conn_b)});
    return *this;
  }
};

/// Wiring file syntax, one directive per line, '#' comments:
///
///     join 0:e3.1 1:e5.0
///     join-connector 0:A 1:B
inline WiringSpec parse_wiring(std::string_view text) {
  WiringSpec w;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto split_part = [](std::string_view tok) {
    auto colon = tok.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected PART:REF, got '" + std::string(tok) + "'");
    return std::pair{detail::parse_int(tok.substr(0, colon), "part index"), tok.substr(colon + 1)};
  };
  try {
    while (std::getline(in, raw)) {
      ++lineno;
      std::string_view line = raw;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      auto toks = detail::split_ws(line);
      if (toks.empty()) continue;
      if (toks.size() != 3) throw ParseError("directive needs two operands");
      auto [pa, ra] = split_part(toks[1]);
      auto [pb, rb] = split_part(toks[2]);
      if (toks[0] == "join") {
        w.join(PartEnd{pa, detail::parse_dart(ra)}, PartEnd{pb, detail::parse_dart(rb)});
      } else if (toks[0] == "join-connector") {
        w.join(pa, std::string(ra), pb, std::string(rb));
      } else {
        throw ParseError("unknown directive '" + std::string(toks[0]) + "'");
      }
    }
  } catch (const ParseError& err) {
    throw ParseError("line " + std::to_string(lineno) + ": " + err.what());
  }
  return w;
}

/// Result of a junction together with the relabeling it applied.
struct JunctionResult {
  Multipole pole;
  std::vector<int> vertex_offset;              // part -> first result vertex id
  std::vector<std::vector<PartEnd>> edge_parts;  // result edge -> constituent part edges (end 0 side first)
};

/// Joins the parts according to `wiring`.
///
/// Relabeling: part p's vertex v becomes vertex_offset[p] + v. Each maximal
/// chain of part edges linked through fused free ends becomes one result
/// edge; result edges are ordered by their smallest constituent (part, edge)
/// pair, and result end 0 is the chain end on the end-0 side of that smallest
/// constituent. Unwired free ends stay free and keep their connector, renamed
/// "<part>.<name>"; connectors left empty are dropped.
inline JunctionResult junction_with_map(const std::vector<Multipole>& parts, const WiringSpec& wiring) {
  std::vector<int> voff(parts.size() + 1, 0), eoff(parts.size() + 1, 0);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    voff[p + 1] = voff[p] + parts[p].vertex_count();
    eoff[p + 1] = eoff[p] + parts[p].edge_count();
  }
  const int total_edges = eoff.back();
  auto global = [&](const PartEnd& pe) {
    if (pe.part < 0 || pe.part >= static_cast<int>(parts.size()))
      throw GraphError("wiring references nonexistent part " + std::to_string(pe.part));
    const auto& m = parts[pe.part];
    if (pe.dart.edge < 0 || pe.dart.edge >= m.edge_count() || pe.dart.end < 0 || pe.dart.end > 1)
      throw GraphError("wiring references nonexistent end " + std::to_string(pe.part) + ":" + to_string(pe.dart));
    if (!m.is_free(pe.dart))
      throw GraphError("wiring references " + std::to_string(pe.part) + ":" + to_string(pe.dart) +
                       " which is not a free end");
    return Dart{eoff[pe.part] + pe.dart.edge, pe.dart.end};
  };

  // link[e][k] = fused partner of global end (e,k), or {-1,-1}
  std::vector<std::array<Dart, 2>> link(total_edges, {Dart{-1, -1}, Dart{-1, -1}});
  auto fuse = [&](const PartEnd& a, const PartEnd& b) {
    Dart ga = global(a), gb = global(b);
    if (ga == gb) throw GraphError("wiring joins a free end to itself");
    for (Dart g : {ga, gb})
      if (link[g.edge][g.end].edge >= 0)
        throw GraphError("free end e" + std::to_string(g.edge) + "." + std::to_string(g.end) +
                         " (global) used more than once");
    link[ga.edge][ga.end] = gb;
    link[gb.edge][gb.end] = ga;
  };
  for (const auto& d : wiring.directives) {
    if (const auto* j = std::get_if<JoinEnds>(&d)) {
      fuse(j->a, j->b);
    } else {
      const auto& jc = std::get<JoinConnectors>(d);
      for (int p : {jc.part_a, jc.part_b})
        if (p < 0 || p >= static_cast<int>(parts.size()))
          throw GraphError("wiring references nonexistent part " + std::to_string(p));
      const auto& ca = parts[jc.part_a].connector(jc.connector_a);
      const auto& cb = parts[jc.part_b].connector(jc.connector_b);
      if (ca.ends.size() != cb.ends.size())
        throw GraphError("connector size mismatch: " + std::to_string(jc.part_a) + ":" + ca.name + " has " +
                         std::to_string(ca.ends.size()) + " ends, " + std::to_string(jc.part_b) + ":" + cb.name +
                         " has " + std::to_string(cb.ends.size()));
      for (std::size_t i = 0; i < ca.ends.size(); ++i)
        fuse(PartEnd{jc.part_a, ca.ends[i]}, PartEnd{jc.part_b, cb.ends[i]});
    }
  }

  auto part_of = [&](int ge) {
    int p = 0;
    while (eoff[p + 1] <= ge) ++p;
    return p;
  };
  auto vertex_at = [&](Dart g) {
    int p = part_of(g.edge);
    int v = parts[p].endpoints(g.edge - eoff[p])[g.end];
    return v == kFree ? kFree : voff[p] + v;
  };

  JunctionResult out;
  out.vertex_offset.assign(voff.begin(), voff.end() - 1);
  std::vector<std::array<int, 2>> edges;
  std::vector<int> owner(total_edges, -1);
  std::map<Dart, Dart> free_map;  // global free end -> result end

  for (int start = 0; start < total_edges; ++start) {
    if (owner[start] >= 0) continue;
    const int rid = static_cast<int>(edges.size());
    // Walk from `start` in both directions.
    auto walk = [&](Dart from, std::vector<Dart>& seq) {
      // `from` is an end of an already-owned edge; follow its link outward.
      Dart cur = from;
      while (true) {
        Dart nxt = link[cur.edge][cur.end];
        if (nxt.edge < 0) return cur;
        if (owner[nxt.edge] == rid) throw GraphError("wiring closes a circle with no vertices");
        owner[nxt.edge] = rid;
        seq.push_back(nxt);
        cur = Dart{nxt.edge, 1 - nxt.end};
      }
    };
    owner[start] = rid;
    std::vector<Dart> back_seq, fwd_seq;
    Dart term0 = walk(Dart{start, 0}, back_seq);
    Dart term1 = walk(Dart{start, 1}, fwd_seq);
    std::vector<PartEnd> chain;
    for (auto it = back_seq.rbegin(); it != back_seq.rend(); ++it) {
      int p = part_of(it->edge);
      chain.push_back({p, Dart{it->edge - eoff[p], 1 - it->end}});
    }
    {
      int p = part_of(start);
      chain.push_back({p, Dart{start - eoff[p], 0}});
    }
    for (Dart d : fwd_seq) {
      int p = part_of(d.edge);
      chain.push_back({p, Dart{d.edge - eoff[p], d.end}});
    }
    int a = vertex_at(term0), b = vertex_at(term1);
    if (a == kFree) free_map[term0] = Dart{rid, 0};
    if (b == kFree) free_map[term1] = Dart{rid, 1};
    edges.push_back({a, b});
    out.edge_parts.push_back(std::move(chain));
  }

  std::vector<Connector> conns;
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (const auto& c : parts[p].connectors()) {
      Connector nc{std::to_string(p) + "." + c.name, {}};
      for (Dart d : c.ends) {
        Dart g{eoff[p] + d.edge, d.end};
        if (link[g.edge][g.end].edge >= 0) continue;
        nc.ends.push_back(free_map.at(g));
      }
      if (!nc.ends.empty()) conns.push_back(std::move(nc));
    }
  // Free ends of parts declared without connectors.
  std::vector<Dart> covered;
  for (const auto& c : conns) covered.insert(covered.end(), c.ends.begin(), c.ends.end());
  std::sort(covered.begin(), covered.end());
  Connector rest{"free", {}};
  for (const auto& [g, r] : free_map)
    if (!std::binary_search(covered.begin(), covered.end(), r)) rest.ends.push_back(r);
  if (!rest.ends.empty()) {
    std::sort(rest.ends.begin(), rest.ends.end());
    conns.push_back(std::move(rest));
  }
  out.pole = Multipole(voff.back(), std::move(edges), std::move(conns));
  return out;
}

inline Multipole junction(const std::vector<Multipole>& parts, const WiringSpec& wiring) {
  return junction_with_map(parts, wiring).pole;
}

}  // namespace snarkdefect
