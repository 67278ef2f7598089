#include <gtest/gtest.h>

#include "oracles.hpp"
#include "snarkdefect/colouring.hpp"
#include "suite.hpp"

using namespace snarkdefect;

namespace {

std::vector<std::vector<int>> as_ids(const std::vector<PerfectMatching>& ms) {
  std::vector<std::vector<int>> out;
  for (const auto& m : ms) out.push_back(m.ids());
  return out;
}

}  // namespace

TEST(Matchings, KnownCounts) {
  EXPECT_EQ(enumerate_perfect_matchings(petersen()).matchings.size(), 6U);
  EXPECT_EQ(enumerate_perfect_matchings(complete_k4()).matchings.size(), 3U);
  auto theta = enumerate_perfect_matchings(theta_graph());
  ASSERT_EQ(theta.matchings.size(), 3U);
  for (int e = 0; e < 3; ++e) EXPECT_EQ(theta.matchings[e].ids(), (std::vector<int>{e}));
}

TEST(Matchings, PetersenPairsShareOneEdge) {
  auto pms = enumerate_perfect_matchings(petersen()).matchings;
  for (std::size_t i = 0; i < pms.size(); ++i)
    for (std::size_t j = i + 1; j < pms.size(); ++j) EXPECT_EQ((pms[i] & pms[j]).count(), 1);
}

TEST(Matchings, AgreeWithEdgeRecursionAndSortedOrder) {
  for (const auto& [name, g] : suite::bridgeless()) {
    auto en = enumerate_perfect_matchings(g);
    EXPECT_TRUE(en.complete);
    EXPECT_EQ(as_ids(en.matchings), oracle::perfect_matchings(g)) << name;
    EXPECT_TRUE(std::is_sorted(en.matchings.begin(), en.matchings.end())) << name;
  }
}

TEST(Matchings, LimitFlagsIncomplete) {
  auto en = enumerate_perfect_matchings(flower_snark(5), 10);
  EXPECT_FALSE(en.complete);
  EXPECT_EQ(en.matchings.size(), 10U);
}

TEST(Matchings, LoopsNeverMatched) {
  CubicGraph g(2, {{0, 0}, {1, 1}, {0, 1}});
  auto en = enumerate_perfect_matchings(g);
  ASSERT_EQ(en.matchings.size(), 1U);
  EXPECT_EQ(en.matchings[0].ids(), (std::vector<int>{2}));
  EdgeSet with_loop = EdgeSet::from_ids(3, {0, 2});
  EXPECT_FALSE(is_perfect_matching(g, with_loop));
}

TEST(Matchings, ComplementIsTwoRegular) {
  for (const auto& [name, g] : suite::bridgeless())
    for (const auto& m : enumerate_perfect_matchings(g).matchings) {
      std::vector<int> deg(g.vertex_count(), 0);
      for (int e = 0; e < g.edge_count(); ++e)
        if (!m.contains(e))
          for (int v : g.endpoints(e)) ++deg[v];
      for (int d : deg) EXPECT_EQ(d, 2) << name;
      int total = 0;
      for (const auto& c : complement_circuits(g, m)) total += static_cast<int>(c.size());
      EXPECT_EQ(total, g.edge_count() - m.count()) << name;
    }
}

TEST(Colouring, PetersenHasNone) {
  EXPECT_FALSE(three_edge_colour(petersen()).has_value());
  EXPECT_FALSE(oracle::edge_colourable(10, petersen().edges()));
}

TEST(Colouring, AgreesWithIndependentBacktracking) {
  for (const auto& [name, g] : suite::bridgeless()) {
    auto c = three_edge_colour(g);
    EXPECT_EQ(c.has_value(), oracle::edge_colourable(g.vertex_count(), g.edges())) << name;
    if (c) EXPECT_TRUE(is_valid_colouring(g, *c)) << name;
  }
}

TEST(Colouring, ClassesArePerfectMatchingsAndReconstruct) {
  for (const auto& [name, g] : suite::colourable()) {
    auto c = three_edge_colour(g);
    ASSERT_TRUE(c) << name;
    auto classes = colour_classes(*c);
    EdgeColouring back{std::vector<int>(g.edge_count(), 0)};
    for (int t = 0; t < 3; ++t) {
      EXPECT_TRUE(is_perfect_matching(g, classes[t])) << name;
      for (int e : classes[t].ids()) back.colour[e] = t + 1;
    }
    EXPECT_TRUE((classes[0] & classes[1]).empty());
    EXPECT_EQ(back, *c) << name;
  }
}

TEST(Colouring, DeterministicFirstSolution) {
  auto a = three_edge_colour(complete_k33());
  auto b = three_edge_colour(complete_k33());
  ASSERT_TRUE(a && b);
  EXPECT_EQ(*a, *b);
  EXPECT_EQ(a->colour[0], 1);
}

TEST(Colouring, PetersenMinusAdjacentPairHasColouring) {
  auto del = delete_vertices(petersen(), {0, 1});
  auto c = three_edge_colour(del.pole);
  ASSERT_TRUE(c);
  EXPECT_TRUE(is_valid_colouring(del.pole, *c));
  EXPECT_EQ(del.pole.free_end_count(), 4);
}

TEST(Colouring, LoopMakesInfeasible) {
  Multipole m(1, {{0, 0}, {0, kFree}});
  EXPECT_FALSE(three_edge_colour(m).has_value());
  EXPECT_FALSE(three_edge_colour(CubicGraph(2, {{0, 0}, {1, 1}, {0, 1}})).has_value());
}

TEST(Colouring, IsolatedAndDanglingEdgesColoured) {
  Multipole iso(0, {{kFree, kFree}});
  auto c = three_edge_colour(iso);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->colour.size(), 1U);
  int count = 0;
  for_each_colouring(iso, [&](const EdgeColouring&) { return ++count, true; });
  EXPECT_EQ(count, 3);
  Multipole star(1, {{0, kFree}, {0, kFree}, {0, kFree}});
  count = 0;
  for_each_colouring(star, [&](const EdgeColouring&) { return ++count, true; });
  EXPECT_EQ(count, 6);
}

TEST(Parity, StarCountsAllOdd) {
  Multipole star(1, {{0, kFree}, {0, kFree}, {0, kFree}});
  for_each_colouring(star, [&](const EdgeColouring& c) {
    auto r = verify_parity(star, c);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.colour_counts, (std::array<int, 3>{1, 1, 1}));
    EXPECT_EQ(r.free_ends, 3);
    return true;
  });
}

TEST(Parity, IsolatedEdgeColouredTwo) {
  Multipole iso(0, {{kFree, kFree}});
  auto r = verify_parity(iso, EdgeColouring{{2}});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.colour_counts, (std::array<int, 3>{0, 2, 0}));
}

TEST(Parity, PetersenPairDanglingColoursPairUp) {
  auto p = petersen();
  auto del = delete_vertices(p, {0, 1});
  int seen = 0;
  for_each_colouring(del.pole, [&](const EdgeColouring& c) {
    EXPECT_TRUE(verify_parity(del.pole, c).holds);
    std::map<int, std::vector<int>> by_origin;  // deleted vertex -> dangling colours
    for (Dart d : del.pole.free_ends()) by_origin[p.endpoints(del.edge_origin[d.edge])[d.end]].push_back(c.colour[d.edge]);
    EXPECT_EQ(by_origin[0][0], by_origin[0][1]);
    EXPECT_EQ(by_origin[1][0], by_origin[1][1]);
    ++seen;
    return true;
  });
  EXPECT_GT(seen, 0);
}

TEST(Parity, InvalidColouringRejected) {
  Multipole star(1, {{0, kFree}, {0, kFree}, {0, kFree}});
  EXPECT_THROW(verify_parity(star, EdgeColouring{{1, 1, 2}}), GraphError);
}

TEST(Snark, Classification) {
  EXPECT_TRUE(is_snark(petersen()));
  EXPECT_FALSE(is_snark(complete_k4()));
  EXPECT_TRUE(is_snark(flower_snark(5)));
  for (const auto& g : suite::read_graph6("blanusa.g6")) EXPECT_TRUE(is_snark(g));
  // Each side is Petersen minus an edge, whose two ends must share a colour.
  EXPECT_TRUE(is_snark(suite::petersen_pair_2cut()));
}

TEST(Oddness, KnownValues) {
  EXPECT_EQ(oddness(petersen()), 2);
  EXPECT_EQ(oddness(flower_snark(5)), 2);
  for (const auto& [name, g] : suite::colourable()) EXPECT_EQ(oddness(g), 0) << name;
  // Every 2-factor of Petersen is two 5-circuits.
  for (const auto& m : enumerate_perfect_matchings(petersen()).matchings) {
    auto circs = complement_circuits(petersen(), m);
    ASSERT_EQ(circs.size(), 2U);
    EXPECT_EQ(circs[0].size(), 5U);
    EXPECT_EQ(circs[1].size(), 5U);
  }
}
