#pragma once

// JSON certificates for analyze and fulkerson runs, and their re-verification.
// Verification recomputes only polynomial-time facts from the stored witnesses.

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "snarkdefect/colouring.hpp"
#include "snarkdefect/defect.hpp"
#include "snarkdefect/fano.hpp"
#include "snarkdefect/fulkerson.hpp"
#include "snarkdefect/io.hpp"
#include "snarkdefect/structure.hpp"

namespace snarkdefect::cert {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "snarkdefect-certificate/1";

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json ids_json(const EdgeSet& s) { return json(s.ids()); }

inline json graph_json(const CubicGraph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return json{{"vertices", g.vertex_count()}, {"edges", edges}, {"hash", graph_hash(g)}};
}

inline json core_json(const CubicGraph& g, const Core& core) {
  json comps = json::array();
  for (const auto& c : core.components)
    comps.push_back({{"kind", to_string(c.kind)},
                     {"vertices", c.vertices},
                     {"edges", c.edges},
                     {"induced", is_induced_circuit(g, c)}});
  return json{{"uncovered", ids_json(core.uncovered)},
              {"doubly", ids_json(core.doubly)},
              {"triply", ids_json(core.triply)},
              {"components", comps}};
}

inline json defect_json(const CubicGraph& g, const DefectResult& r) {
  json j;
  j["value"] = r.value ? json(*r.value) : json(nullptr);
  j["exhaustive"] = r.exhaustive;
  j["regular_required"] = r.regular_required;
  j["none_found"] = r.none_found();
  if (!r.witness) {
    j["witness"] = nullptr;
    return j;
  }
  json w = json::array();
  for (const auto& m : r.witness->members) w.push_back(ids_json(m));
  j["witness"] = w;
  j["witness_indices"] = r.witness_indices;
  auto cov = coverage(g, *r.witness);
  j["coverage"] = {{"n0", cov.counts[0]}, {"n1", cov.counts[1]}, {"n2", cov.counts[2]}, {"n3", cov.counts[3]}};
  j["core"] = core_json(g, core_from_coverage(g, cov));
  return j;
}

inline json flow_json(const CharacteristicFlow& f) {
  json out = json::array();
  for (auto p : f.value) out.push_back(p.str());
  return out;
}

struct AnalyzeOptions {
  SearchBudget budget;
};

/// Everything `analyze` reports about one graph. `exact` is false when any
/// search stopped at a budget.
struct Analysis {
  json certificate;
  bool exact = true;
  std::vector<std::string> errors;  // hard failures (bridges, failed bound checks)
};

inline Analysis analyze(const std::string& name, const CubicGraph& g, const AnalyzeOptions& opt) {
  Analysis out;
  json& c = out.certificate;
  c["name"] = name;
  c["graph"] = graph_json(g);
  const bool bridgeless = is_bridgeless(g);
  c["bridgeless"] = bridgeless;
  c["two_connected"] = is_two_connected(g);
  c["girth"] = girth(g);
  auto colouring = three_edge_colour(g);
  c["colourable"] = colouring.has_value();
  c["colouring"] = colouring ? json(colouring->colour) : json(nullptr);
  c["snark"] = is_two_connected(g) && !colouring;

  auto en = enumerate_perfect_matchings(g, opt.budget.max_matchings);
  c["matchings"] = {{"count", en.matchings.size()}, {"complete", en.complete}};
  if (!en.complete) out.exact = false;

  // Oddness: exact when colourable or when every matching was enumerated.
  json odd = nullptr;
  if (colouring) {
    odd = {{"value", 0}, {"witness", ids_json(colour_classes(*colouring)[0])}};
  } else if (en.complete && !en.matchings.empty()) {
    int best = -1;
    const EdgeSet* arg = nullptr;
    for (const auto& m : en.matchings) {
      int k = 0;
      for (const auto& circ : complement_circuits(g, m)) k += circ.size() % 2;
      if (best < 0 || k < best) {
        best = k;
        arg = &m;
      }
    }
    odd = {{"value", best}, {"witness", ids_json(*arg)}};
  }
  c["oddness"] = odd;

  if (!bridgeless) {
    out.errors.push_back(name + ": graph has a bridge; df and rdf are undefined");
    c["df"] = nullptr;
    c["rdf"] = nullptr;
    return out;
  }
  auto df = defect(g, opt.budget, &en.matchings);
  auto rdf = regular_defect(g, opt.budget, &en.matchings);
  df.exhaustive = df.exhaustive && en.complete;
  rdf.exhaustive = rdf.exhaustive && en.complete;
  if (!df.exhaustive || !rdf.exhaustive) out.exact = false;
  c["df"] = defect_json(g, df);
  c["rdf"] = defect_json(g, rdf);

  c["characteristic_flow"] = rdf.witness ? flow_json(characteristic_flow(g, *rdf.witness)) : json(nullptr);
  if (rdf.witness) {
    bool ok = check_girth_bound(g, rdf);
    c["girth_bound"] = ok;
    if (!ok) out.errors.push_back(name + ": girth bound violated by the regular witness");
  } else {
    c["girth_bound"] = nullptr;
  }
  if (c["snark"].get<bool>() && df.exhaustive && rdf.exhaustive) {
    bool ok = verify_corollary_rdf3(df, rdf);
    c["corollary_rdf3"] = ok;
    if (!ok) out.errors.push_back(name + ": (df = 3) <=> (rdf = 3) fails");
  } else {
    c["corollary_rdf3"] = nullptr;
  }
  return out;
}

struct FulkersonOptions {
  CoverBudget budget;
  bool roundtrip = false;
};

struct FulkersonRun {
  json certificate;
  bool exact = true;
  std::vector<std::string> errors;
};

inline json members_json(const std::vector<EdgeSet>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(ids_json(m));
  return out;
}

template <std::size_t N>
json members_json(const std::array<EdgeSet, N>& ms) {
  return members_json(std::vector<EdgeSet>(ms.begin(), ms.end()));
}

inline FulkersonRun fulkerson(const std::string& name, const CubicGraph& g, const FulkersonOptions& opt) {
  FulkersonRun out;
  json& c = out.certificate;
  c["name"] = name;
  c["graph"] = graph_json(g);
  if (!is_bridgeless(g)) {
    out.errors.push_back(name + ": graph has a bridge");
    c["cover"] = nullptr;
    return out;
  }
  auto res = find_cover(g, opt.budget);
  c["exhaustive"] = res.exhaustive;
  c["none_found"] = res.none_found();
  if (!res.exhaustive && !res.cover) out.exact = false;
  if (!res.cover) {
    c["cover"] = nullptr;
    return out;
  }
  c["cover"] = members_json(res.cover->members);
  c["multiplicity"] = verify_cover(g, *res.cover).multiplicity;
  if (!opt.roundtrip) return out;

  json rt;
  try {
    auto pair = cover_to_complementary(g, *res.cover);
    auto flows = complementary_to_flows(g, pair);
    auto xi = flows_to_cover(g, flows);
    auto check = verify_cover(g, xi.cover);
    rt["first"] = members_json(pair.first.members);
    rt["second"] = members_json(pair.second.members);
    rt["p1"] = ids_json(flows.p1);
    rt["p2"] = ids_json(flows.p2);
    rt["phi1"] = flows.phi1.value;
    rt["phi2"] = flows.phi2.value;
    rt["xi"] = xi.xi;
    rt["cover"] = members_json(xi.cover.members);
    rt["pass"] = check.ok;
    if (!check.ok) out.errors.push_back(name + ": round trip cover invalid: " + check.violation);
  } catch (const std::exception& e) {
    rt["pass"] = false;
    rt["error"] = e.what();
    out.errors.push_back(name + ": round trip failed: " + e.what());
  }
  c["roundtrip"] = rt;
  return out;
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyReport {
  std::string name;
  std::vector<std::string> failures;
  int checks = 0;
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline EdgeSet edge_set_from(const json& j, int m, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of edge ids");
  EdgeSet s(m);
  for (const auto& x : j) {
    int e = as_int(x, what);
    if (e < 0 || e >= m) throw SchemaError(std::string(what) + " references edge " + std::to_string(e) + " outside the graph");
    s.insert(e);
  }
  return s;
}

inline CubicGraph graph_from(const json& j, VerifyReport& rep) {
  int n = as_int(field(j, "vertices"), "vertices");
  const json& ej = field(j, "edges");
  if (!ej.is_array()) throw SchemaError("edges must be an array");
  std::vector<std::array<int, 2>> edges;
  for (const auto& e : ej) {
    if (!e.is_array() || e.size() != 2) throw SchemaError("each edge must be a pair");
    edges.push_back({as_int(e[0], "endpoint"), as_int(e[1], "endpoint")});
  }
  CubicGraph g(n, std::move(edges));
  ++rep.checks;
  if (field(j, "hash") != graph_hash(g)) rep.failures.push_back("graph hash does not match the edge list");
  return g;
}

template <class T>
void expect_eq(VerifyReport& rep, const json& stated, const T& actual, const std::string& what) {
  ++rep.checks;
  if (stated != json(actual)) rep.failures.push_back(what + ": stated " + stated.dump() + ", recomputed " + json(actual).dump());
}

inline void verify_defect_block(const CubicGraph& g, const json& block, bool regular, VerifyReport& rep,
                                const std::string& label) {
  if (block.is_null()) return;
  const json& w = field(block, "witness");
  const json& value = field(block, "value");
  ++rep.checks;
  if (field(block, "regular_required").get<bool>() != regular)
    rep.failures.push_back(label + ": regular_required flag is wrong");
  if (w.is_null()) {
    ++rep.checks;
    if (!value.is_null()) rep.failures.push_back(label + ": value/witness mismatch: value without witness");
    return;
  }
  if (!w.is_array() || w.size() != 3) throw SchemaError(label + ": witness must list three matchings");
  ThreeArray a{{edge_set_from(w[0], g.edge_count(), "witness"), edge_set_from(w[1], g.edge_count(), "witness"),
                edge_set_from(w[2], g.edge_count(), "witness")}};
  for (int i = 0; i < 3; ++i) {
    std::string why;
    ++rep.checks;
    if (!is_perfect_matching(g, a.members[i], &why)) {
      rep.failures.push_back(label + ": witness member " + std::to_string(i + 1) + " is not a perfect matching: " + why);
      return;
    }
  }
  auto cov = coverage(g, a);
  ++rep.checks;
  if (value.is_null() || !value.is_number_integer() || value.get<int>() != cov.uncovered())
    rep.failures.push_back(label + ": value/witness mismatch: value " + value.dump() + ", witness leaves " +
                           std::to_string(cov.uncovered()) + " edges uncovered");
  ++rep.checks;
  if (regular && !cov.regular()) rep.failures.push_back(label + ": witness has a triply covered edge");
  expect_eq(rep, field(block, "coverage"),
            json{{"n0", cov.counts[0]}, {"n1", cov.counts[1]}, {"n2", cov.counts[2]}, {"n3", cov.counts[3]}},
            label + " coverage");
  Core core;
  try {
    core = core_from_coverage(g, cov);
  } catch (const CoreStructureError& e) {
    rep.failures.push_back(label + ": core structure violated: " + e.what());
    return;
  }
  expect_eq(rep, field(block, "core"), core_json(g, core), label + " core");
  if (cov.uncovered() == 3) {
    ++rep.checks;
    if (core.components.size() != 1 || core.components[0].edges.size() != 6 || !is_induced_circuit(g, core.components[0]))
      rep.failures.push_back(label + ": a 3-uncovered core must be an induced 6-circuit");
  }
}

inline VerifyReport verify_analysis(const json& c) {
  VerifyReport rep;
  rep.name = field(c, "name").get<std::string>();
  CubicGraph g = graph_from(field(c, "graph"), rep);
  expect_eq(rep, field(c, "girth"), girth(g), "girth");
  expect_eq(rep, field(c, "bridgeless"), is_bridgeless(g), "bridgeless");
  expect_eq(rep, field(c, "two_connected"), is_two_connected(g), "two_connected");

  const json& col = field(c, "colouring");
  const bool colourable = field(c, "colourable").get<bool>();
  ++rep.checks;
  if (colourable) {
    std::string why;
    if (!col.is_array() || !is_valid_colouring(g, EdgeColouring{col.get<std::vector<int>>()}, &why))
      rep.failures.push_back("stated colouring is invalid: " + why);
  } else if (!col.is_null()) {
    rep.failures.push_back("colouring given for a graph claimed uncolourable");
  }
  expect_eq(rep, field(c, "snark"), is_two_connected(g) && !colourable, "snark flag");

  const json& odd = field(c, "oddness");
  if (!odd.is_null()) {
    EdgeSet m = edge_set_from(field(odd, "witness"), g.edge_count(), "oddness witness");
    std::string why;
    ++rep.checks;
    if (!is_perfect_matching(g, m, &why)) {
      rep.failures.push_back("oddness witness is not a perfect matching: " + why);
    } else {
      int k = 0;
      for (const auto& circ : complement_circuits(g, m)) k += circ.size() % 2;
      expect_eq(rep, field(odd, "value"), k, "odd circuits of the oddness witness");
    }
  }

  const json& df = field(c, "df");
  const json& rdf = field(c, "rdf");
  verify_defect_block(g, df, false, rep, "df");
  verify_defect_block(g, rdf, true, rep, "rdf");
  if (!df.is_null() && !rdf.is_null()) {
    const json &dv = field(df, "value"), &rv = field(rdf, "value");
    if (dv.is_number_integer()) {
      ++rep.checks;
      if (colourable != (dv.get<int>() == 0)) rep.failures.push_back("df = 0 must hold exactly for colourable graphs");
      if (!colourable && dv.get<int>() < 3 && field(df, "exhaustive").get<bool>())
        rep.failures.push_back("snark with df below 3");
    }
    if (dv.is_number_integer() && rv.is_number_integer() && field(df, "exhaustive").get<bool>()) {
      ++rep.checks;
      if (rv.get<int>() < dv.get<int>()) rep.failures.push_back("rdf below an exhaustive df");
    }
  }

  const json& flow = field(c, "characteristic_flow");
  if (!flow.is_null()) {
    if (rdf.is_null() || field(rdf, "witness").is_null()) throw SchemaError("flow without a regular witness");
    const json& w = field(rdf, "witness");
    ThreeArray a{{edge_set_from(w[0], g.edge_count(), "witness"), edge_set_from(w[1], g.edge_count(), "witness"),
                  edge_set_from(w[2], g.edge_count(), "witness")}};
    CharacteristicFlow f;
    for (const auto& p : flow) {
      auto pt = p.is_string() ? FanoPoint::parse(p.get<std::string>()) : std::nullopt;
      if (!pt) throw SchemaError("flow values must be 3-bit strings");
      f.value.push_back(*pt);
    }
    auto chk = verify_flow(g, f);
    ++rep.checks;
    if (!chk.ok) rep.failures.push_back("characteristic flow: " + chk.violation);
    ++rep.checks;
    if (rep.ok() && members_from_flow(f).members != a.members)
      rep.failures.push_back("characteristic flow does not encode the regular witness");
  }
  const json& gb = field(c, "girth_bound");
  if (!gb.is_null() && rep.ok()) {
    DefectResult r;
    r.regular_required = true;
    r.value = field(rdf, "value").get<int>();
    const json& w = field(rdf, "witness");
    r.witness = ThreeArray{{edge_set_from(w[0], g.edge_count(), "witness"),
                            edge_set_from(w[1], g.edge_count(), "witness"),
                            edge_set_from(w[2], g.edge_count(), "witness")}};
    expect_eq(rep, gb, check_girth_bound(g, r), "girth bound");
  }
  const json& cor = field(c, "corollary_rdf3");
  if (!cor.is_null()) {
    bool df3 = field(df, "value") == 3, rdf3 = field(rdf, "value") == 3;
    expect_eq(rep, cor, df3 == rdf3, "(df = 3) <=> (rdf = 3)");
  }
  return rep;
}

template <std::size_t N>
std::array<EdgeSet, N> members_from(const json& j, int m, const char* what) {
  if (!j.is_array() || j.size() != N) throw SchemaError(std::string(what) + " must list " + std::to_string(N) + " matchings");
  std::array<EdgeSet, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = edge_set_from(j[i], m, what);
  return out;
}

inline VerifyReport verify_fulkerson(const json& c) {
  VerifyReport rep;
  rep.name = field(c, "name").get<std::string>();
  CubicGraph g = graph_from(field(c, "graph"), rep);
  const int m = g.edge_count();
  const json& cover = field(c, "cover");
  if (cover.is_null()) return rep;
  FulkersonCover fc{members_from<6>(cover, m, "cover")};
  auto chk = verify_cover(g, fc);
  ++rep.checks;
  if (!chk.ok) {
    rep.failures.push_back("cover: " + chk.violation);
    return rep;
  }
  expect_eq(rep, field(c, "multiplicity"), chk.multiplicity, "multiplicity table");
  if (!c.contains("roundtrip")) return rep;
  const json& rt = c.at("roundtrip");
  if (!field(rt, "pass").get<bool>()) {
    rep.failures.push_back("round trip recorded as failed");
    return rep;
  }
  ComplementaryPair pair{ThreeArray{members_from<3>(field(rt, "first"), m, "first")},
                         ThreeArray{members_from<3>(field(rt, "second"), m, "second")}};
  ++rep.checks;
  std::multiset<EdgeSet> split, all(fc.members.begin(), fc.members.end());
  for (const auto& x : pair.first.members) split.insert(x);
  for (const auto& x : pair.second.members) split.insert(x);
  if (split != all) rep.failures.push_back("complementary pair is not a split of the cover");
  ++rep.checks;
  try {
    if (auto why = complementary_violation(g, pair); !why.empty()) {
      rep.failures.push_back("pair not complementary: " + why);
      return rep;
    }
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("pair not complementary: ") + e.what());
    return rep;
  }
  EdgeSet p1 = edge_set_from(field(rt, "p1"), m, "p1"), p2 = edge_set_from(field(rt, "p2"), m, "p2");
  ++rep.checks;
  if (p1 != core_of(g, pair.first).uncovered || p2 != core_of(g, pair.second).uncovered)
    rep.failures.push_back("P1/P2 differ from the arrays' uncovered sets");
  GroupFlow phi1{p1, field(rt, "phi1").get<std::vector<int>>()}, phi2{p2, field(rt, "phi2").get<std::vector<int>>()};
  for (const auto* phi : {&phi1, &phi2}) {
    ++rep.checks;
    if (auto why = group_flow_violation(g, *phi); !why.empty()) rep.failures.push_back("flow: " + why);
  }
  if (!rep.ok()) return rep;
  XiColouring xi;
  try {
    xi = flows_to_cover(g, p1, p2, phi1, phi2);
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("xi construction failed: ") + e.what());
    return rep;
  }
  expect_eq(rep, field(rt, "xi"), xi.xi, "xi");
  auto rebuilt = members_from<6>(field(rt, "cover"), m, "roundtrip cover");
  ++rep.checks;
  if (rebuilt != xi.cover.members) rep.failures.push_back("round trip cover does not match xi");
  return rep;
}

}  // namespace detail

/// Re-verifies every certificate of a bundle.
inline std::vector<VerifyReport> verify_bundle(const json& bundle) {
  if (!bundle.is_object() || bundle.value("schema", "") != kSchema)
    throw SchemaError(std::string("expected schema '") + kSchema + "'");
  const std::string command = detail::field(bundle, "command").get<std::string>();
  const json& certs = detail::field(bundle, "certificates");
  if (!certs.is_array()) throw SchemaError("certificates must be an array");
  std::vector<VerifyReport> out;
  for (const auto& c : certs) {
    try {
      if (command == "analyze") out.push_back(detail::verify_analysis(c));
      else if (command == "fulkerson") out.push_back(detail::verify_fulkerson(c));
      else throw SchemaError("unknown command '" + command + "'");
    } catch (const json::exception& e) {
      throw SchemaError(std::string("malformed certificate: ") + e.what());
    } catch (const GraphError& e) {
      VerifyReport r;
      r.name = c.value("name", "?");
      r.failures.push_back(std::string("invalid graph: ") + e.what());
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace snarkdefect::cert
