#include <gtest/gtest.h>

#include "oracles.hpp"
#include "snarkdefect/canonical.hpp"
#include "snarkdefect/junction.hpp"
#include "suite.hpp"

using namespace snarkdefect;

namespace {

CubicGraph cube_q3() {
  std::vector<std::array<int, 2>> e;
  for (int v = 0; v < 8; ++v)
    for (int bit : {1, 2, 4})
      if (!(v & bit)) e.push_back({v, v | bit});
  return CubicGraph(8, std::move(e));
}

// Generalised Petersen GP(10,3), the usual presentation of the Desargues graph.
CubicGraph gp_10_3() {
  std::vector<std::array<int, 2>> e;
  for (int i = 0; i < 10; ++i) {
    e.push_back({i, (i + 1) % 10});
    e.push_back({i, i + 10});
    e.push_back({10 + i, 10 + (i + 3) % 10});
  }
  return CubicGraph(20, std::move(e));
}

// Two copies of K4 with one edge subdivided, the subdivision vertices joined by a bridge.
CubicGraph two_blocks_with_bridge() {
  std::vector<std::array<int, 2>> e;
  for (int c = 0; c < 2; ++c) {
    int o = 5 * c;
    e.insert(e.end(), {{o, o + 2}, {o, o + 3}, {o + 1, o + 2}, {o + 1, o + 3}, {o + 2, o + 3}, {o, o + 4}, {o + 1, o + 4}});
  }
  e.push_back({4, 9});
  return CubicGraph(10, std::move(e));
}

CubicGraph loops_graph() { return CubicGraph(2, {{0, 0}, {1, 1}, {0, 1}}); }

}  // namespace

TEST(Graph6, PetersenDecodesAgainstIndependentDecoder) {
  const std::string line = suite::read_lines("petersen.g6").at(0);
  auto g = parse_graph6(line);
  int n = 0;
  auto expected = oracle::graph6_edges(line, &n);
  EXPECT_EQ(g.vertex_count(), 10);
  EXPECT_EQ(g.edge_count(), 15);
  EXPECT_EQ(n, 10);
  EXPECT_EQ(oracle::edge_pairs(g), expected);
  EXPECT_EQ(oracle::edge_pairs(g), oracle::edge_pairs(petersen()));
}

TEST(Graph6, CompleteGraphs) {
  auto lines = suite::read_lines("colourable.g6");
  auto k4 = parse_graph6(lines.at(0));
  auto k33 = parse_graph6(lines.at(1));
  EXPECT_EQ(k4.vertex_count(), 4);
  EXPECT_EQ(k4.edge_count(), 6);
  EXPECT_EQ(k33.vertex_count(), 6);
  EXPECT_EQ(k33.edge_count(), 9);
  EXPECT_TRUE(isomorphic(k4, complete_k4()));
  EXPECT_TRUE(isomorphic(k33, complete_k33()));
}

TEST(Graph6, RoundTripAndHeader) {
  for (const auto& [name, g] : suite::bridgeless()) {
    if (name == "theta") continue;  // graph6 cannot hold parallel edges
    auto back = parse_graph6(to_graph6(g));
    EXPECT_EQ(oracle::edge_pairs(back), oracle::edge_pairs(g)) << name;
    EXPECT_EQ(oracle::edge_pairs(parse_graph6(">>graph6<<" + to_graph6(g))), oracle::edge_pairs(g)) << name;
  }
}

TEST(Graph6, Errors) {
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("C"), ParseError);      // truncated
  EXPECT_THROW(parse_graph6("C~~"), ParseError);    // trailing byte
  EXPECT_THROW(parse_graph6("C\x01"), ParseError);  // byte outside the alphabet
  try {
    parse_graph6("A_");  // K2
    FAIL() << "non-cubic input accepted";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("vertex 0"), std::string::npos) << e.what();
  }
  EXPECT_THROW(to_graph6(theta_graph()), GraphError);
}

TEST(EdgeList, ThetaStarAndIsolatedEdge) {
  auto theta = parse_edge_list("vertices 2\n0 1\n0 1\n0 1\n");
  EXPECT_TRUE(theta.is_closed());
  EXPECT_EQ(theta.to_graph(), theta_graph());

  auto star = parse_edge_list("# the 3-pole star\nvertices 1\n0 -\n0 -\n0 -\n");
  EXPECT_EQ(star.free_end_count(), 3);
  ASSERT_EQ(star.connectors().size(), 1U);
  EXPECT_EQ(star.connectors()[0].name, "S");

  auto iso = parse_edge_list("vertices 0\n- -\n");
  EXPECT_EQ(iso.edge_count(), 1);
  EXPECT_EQ(iso.vertex_count(), 0);
  EXPECT_EQ(iso.free_end_count(), 2);
}

TEST(EdgeList, ConnectorsAndRoundTrip) {
  const std::string text =
      "vertices 1\n0 -\n0 -\n0 -\n- -\n- -\n"
      "connector A: e0.1 e3.0 e4.0\nconnector B: e1.1 e3.1 e4.1\nconnector C: e2.1\n";
  auto z = parse_edge_list(text);
  ASSERT_EQ(z.connectors().size(), 3U);
  EXPECT_EQ(z.connector("A").ends.size(), 3U);
  EXPECT_EQ(z.connector("C").ends, (std::vector<Dart>{{2, 1}}));
  EXPECT_EQ(to_edge_list(parse_edge_list(to_edge_list(z))), to_edge_list(z));
  for (const auto& [name, g] : suite::bridgeless())
    EXPECT_EQ(parse_edge_list(to_edge_list(g)).to_graph(), g) << name;
  auto loops = loops_graph();
  EXPECT_EQ(parse_edge_list(to_edge_list(loops)).to_graph(), loops);
}

TEST(EdgeList, Errors) {
  EXPECT_THROW(parse_edge_list("vertices 2\n0 1\n0 1\n"), GraphError);        // degree 2
  EXPECT_THROW(parse_edge_list("0 1\n"), ParseError);                         // no header
  EXPECT_THROW(parse_edge_list("vertices 1\n0 -\n0 -\n0 x\n"), ParseError);   // bad token
  EXPECT_THROW(parse_edge_list("vertices 1\n0 -\n0 -\n0 -\nconnector A: e0.1 e1.1\n"),
               GraphError);  // e2.1 in no connector
  EXPECT_THROW(parse_edge_list("vertices 1\n0 -\n0 -\n0 -\nconnector A: e0.0 e1.1 e2.1\n"),
               GraphError);  // e0.0 is not free
  try {
    parse_edge_list("vertices 1\n0 -\n\n0 - -\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Invariants, HandshakeAndStableIncidence) {
  for (const auto& [name, g] : suite::bridgeless()) {
    EXPECT_EQ(3 * g.vertex_count(), 2 * g.edge_count()) << name;
    for (int v = 0; v < g.vertex_count(); ++v)
      for (Dart d : g.darts(v)) EXPECT_EQ(g.vertex_of(d), v) << name;
  }
  EXPECT_THROW(CubicGraph(1, {{0, -1}, {0, 0}}), GraphError);
  EXPECT_THROW(CubicGraph(2, {{0, 1}, {0, 1}}), GraphError);
}

TEST(Girth, KnownValuesAndOracle) {
  EXPECT_EQ(girth(petersen()), 5);
  EXPECT_EQ(girth(theta_graph()), 2);
  EXPECT_EQ(girth(flower_snark(5)), 5);
  EXPECT_EQ(girth(flower_snark(7)), 6);
  EXPECT_EQ(girth(loops_graph()), 1);
  for (const auto& [name, g] : suite::bridgeless()) EXPECT_EQ(girth(g), oracle::girth(g)) << name;
}

TEST(Connectivity, Bridges) {
  EXPECT_TRUE(is_bridgeless(petersen()));
  EXPECT_TRUE(is_bridgeless(theta_graph()));
  auto b = two_blocks_with_bridge();
  EXPECT_FALSE(is_bridgeless(b));
  EXPECT_EQ(bridges(b), (std::vector<int>{14}));
  EXPECT_FALSE(is_bridgeless(loops_graph()));
  EXPECT_TRUE(is_two_connected(petersen()));
  EXPECT_FALSE(is_two_connected(b));
}

TEST(Connectivity, CyclicEdgeConnectivity) {
  EXPECT_EQ(cyclic_edge_connectivity(petersen(), 6), 5);
  EXPECT_EQ(cyclic_edge_connectivity(petersen(), 4), std::nullopt);
  EXPECT_EQ(cyclic_edge_connectivity(complete_k4(), 6), std::nullopt);
  EXPECT_EQ(oracle::cyclic_connectivity(complete_k4()), -1);
  auto two = suite::petersen_pair_2cut();
  EXPECT_EQ(cyclic_edge_connectivity(two, 6), 2);
  EXPECT_EQ(oracle::cyclic_connectivity(two), 2);
  for (const auto& [name, g] : suite::bridgeless()) {
    if (g.vertex_count() > 20) continue;
    int expect = oracle::cyclic_connectivity(g);
    auto got = cyclic_edge_connectivity(g, 6);
    if (expect < 0 || expect > 6) EXPECT_EQ(got, std::nullopt) << name;
    else EXPECT_EQ(got, expect) << name;
  }
  EXPECT_THROW(cyclic_edge_connectivity(flower_snark(11), 3), SizeLimitError);
}

TEST(BipartiteDouble, PetersenIsDesargues) {
  auto d = bipartite_double(petersen());
  EXPECT_EQ(d.vertex_count(), 20);
  EXPECT_EQ(girth(d), 6);
  EXPECT_TRUE(is_bipartite(d));
  EXPECT_TRUE(is_connected(d));
  EXPECT_TRUE(isomorphic(d, gp_10_3()));
}

TEST(BipartiteDouble, K4IsCube) {
  auto q = bipartite_double(complete_k4());
  EXPECT_EQ(q.vertex_count(), 8);
  EXPECT_TRUE(isomorphic(q, cube_q3()));
  EXPECT_FALSE(isomorphic(q, inflate_to_triangle(inflate_to_triangle(complete_k4(), 0), 1)));
}

TEST(BipartiteDouble, BipartiteSplitsAndGirthLaw) {
  auto d = bipartite_double(complete_k33());
  EXPECT_FALSE(is_connected(d));
  EXPECT_EQ(detail::lowpoint(d).components, 2);
  for (const auto& [name, g] : suite::bridgeless()) {
    if (!is_connected(g)) continue;
    auto dd = bipartite_double(g);
    EXPECT_TRUE(is_bipartite(dd)) << name;
    EXPECT_EQ(is_connected(dd), !is_bipartite(g)) << name;
    const int gg = girth(g), gd = girth(dd);
    EXPECT_GE(gd, gg) << name;
    // Odd circuits only lift to circuits of double length; even ones lift as they are.
    bool even_shortest = false;
    for (auto& c : circuits_of_length(g, gg)) even_shortest = even_shortest || c.edges.size() % 2 == 0;
    if (gg >= 3) EXPECT_EQ(gd == gg, even_shortest) << name;
  }
}

TEST(Canonical, DistinguishesAndIdentifies) {
  auto p = petersen();
  // Relabel by reversing vertex ids and shuffling edge order.
  std::vector<std::array<int, 2>> e;
  for (int i = p.edge_count() - 1; i >= 0; --i) e.push_back({9 - p.endpoints(i)[1], 9 - p.endpoints(i)[0]});
  EXPECT_TRUE(isomorphic(p, CubicGraph(10, e)));
  std::vector<std::array<int, 2>> prism;  // pentagonal prism, also cubic on 10 vertices
  for (int i = 0; i < 5; ++i) prism.insert(prism.end(), {{i, (i + 1) % 5}, {i, i + 5}, {5 + i, 5 + (i + 1) % 5}});
  EXPECT_FALSE(isomorphic(p, CubicGraph(10, prism)));
  auto bl = suite::read_graph6("blanusa.g6");
  EXPECT_FALSE(isomorphic(bl[0], bl[1]));
  EXPECT_TRUE(isomorphic(bl[0], blanusa_snark(1)));
  EXPECT_TRUE(isomorphic(bl[1], blanusa_snark(2)));
}

TEST(Junction, TwoStarsMakeTheta) {
  Multipole star = parse_edge_list("vertices 1\n0 -\n0 -\n0 -\n");
  WiringSpec w;
  for (int k = 0; k < 3; ++k) w.join(PartEnd{0, {k, 1}}, PartEnd{1, {k, 1}});
  auto r = junction({star, star}, w);
  ASSERT_TRUE(r.is_closed());
  EXPECT_TRUE(isomorphic(r.to_graph(), theta_graph()));
}

TEST(Junction, PetersenReassembled) {
  auto p = petersen();
  auto del = delete_vertices(p, {0, 1});
  ASSERT_EQ(del.pole.free_end_count(), 4);
  // The pair u=0, v=1 as a 4-pole: edge 0 joins them; two dangling ends each.
  Multipole pair_pole(2, {{0, 1}, {0, kFree}, {0, kFree}, {1, kFree}, {1, kFree}});
  WiringSpec w;
  int ui = 1, vi = 3;
  for (Dart d : del.pole.free_ends()) {
    int origin = p.endpoints(del.edge_origin[d.edge])[d.end];
    int slot = origin == 0 ? ui++ : vi++;
    w.join(PartEnd{0, d}, PartEnd{1, {slot, 1}});
  }
  auto r = junction_with_map({del.pole, pair_pole}, w);
  ASSERT_TRUE(r.pole.is_closed());
  EXPECT_EQ(r.pole.vertex_count(), 10);
  EXPECT_TRUE(isomorphic(r.pole.to_graph(), p));
  EXPECT_EQ(r.vertex_offset, (std::vector<int>{0, 8}));
}

TEST(Junction, SubdividedRayIsStructural) {
  Multipole star = parse_edge_list("vertices 1\n0 -\n0 -\n0 -\n");
  Multipole iso = parse_edge_list("vertices 0\n- -\n");
  auto r = junction({star, iso}, WiringSpec{}.join(PartEnd{0, {0, 1}}, PartEnd{1, {0, 0}}));
  EXPECT_EQ(r.vertex_count(), 1);
  EXPECT_EQ(r.free_end_count(), 3);
  EXPECT_EQ(r.edge_count(), 3);
}

TEST(Junction, Errors) {
  Multipole star = parse_edge_list("vertices 1\n0 -\n0 -\n0 -\n");
  EXPECT_THROW(junction({star, star}, WiringSpec{}.join(PartEnd{0, {0, 1}}, PartEnd{1, {0, 1}}).join(
                                          PartEnd{0, {0, 1}}, PartEnd{1, {1, 1}})),
               GraphError);  // reused end
  EXPECT_THROW(junction({star, star}, WiringSpec{}.join(PartEnd{0, {0, 0}}, PartEnd{1, {0, 1}})),
               GraphError);  // end at a vertex
  EXPECT_THROW(junction({star}, WiringSpec{}.join(PartEnd{1, {0, 1}}, PartEnd{0, {0, 1}})),
               GraphError);  // no part 1
  Multipole z = z_pole();
  EXPECT_THROW(junction({z, z}, WiringSpec{}.join(0, "A", 1, "C")), GraphError);  // sizes 3 and 1
}

TEST(Junction, WiringFileSyntax) {
  auto w = parse_wiring("# pairs\njoin 0:e0.1 1:e0.1\njoin-connector 0:A 1:B\n");
  ASSERT_EQ(w.directives.size(), 2U);
  EXPECT_TRUE(std::holds_alternative<JoinEnds>(w.directives[0]));
  const auto& jc = std::get<JoinConnectors>(w.directives[1]);
  EXPECT_EQ(jc.connector_a, "A");
  EXPECT_EQ(jc.part_b, 1);
  EXPECT_THROW(parse_wiring("join 0:e0.1\n"), ParseError);
  EXPECT_THROW(parse_wiring("splice 0:A 1:B\n"), ParseError);
}

TEST(Junction, PreservesVertexCountAndDegrees) {
  auto p = petersen();
  auto del = delete_vertices(p, {3});
  Multipole star = parse_edge_list("vertices 1\n0 -\n0 -\n0 -\n");
  WiringSpec w;
  auto ends = del.pole.free_ends();
  for (int k = 0; k < 3; ++k) w.join(PartEnd{0, ends[k]}, PartEnd{1, {k, 1}});
  auto r = junction({del.pole, star}, w);
  EXPECT_EQ(r.vertex_count(), del.pole.vertex_count() + 1);
  for (int v = 0; v < r.vertex_count(); ++v) EXPECT_EQ(r.darts(v).size(), 3U);
  EXPECT_TRUE(isomorphic(r.to_graph(), p));
}
