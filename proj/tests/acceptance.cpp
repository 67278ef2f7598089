// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "certificate.hpp"
#include "oracles.hpp"
#include "snarkdefect/fano.hpp"
#include "snarkdefect/fulkerson.hpp"
#include "suite.hpp"

using namespace snarkdefect;

namespace {

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s >= limit_s) {
    std::ostringstream msg;
    msg << "runtime " << s << " s exceeds " << limit_s << " s";
    c.failures.push_back(msg.str());
  }
  bool ok = c.failures.empty();
  failed += !ok;
  std::printf("%s %d: %s (%.3f s)\n", ok ? "PASS" : "FAIL", n, title.c_str(), s);
  for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("    %s\n", c.failures[i].c_str());
  std::fflush(stdout);
}

std::vector<suite::Named> corollary_set() {
  auto bl = suite::read_graph6("blanusa.g6");
  return {{"petersen", petersen()}, {"J5", flower_snark(5)}, {"J7", flower_snark(7)}, {"blanusa1", bl.at(0)},
          {"blanusa2", bl.at(1)}};
}

}  // namespace

int main() {
  criterion(1, "Petersen baseline df=3 rdf=3 with induced alternating 6-circuit core", 1.0, [](Check& c) {
    auto g = petersen();
    auto d = defect(g), r = regular_defect(g);
    auto naive = oracle::naive_defect(g, false), naive_r = oracle::naive_defect(g, true);
    c.expect(d.exhaustive && r.exhaustive, "search not exhaustive");
    c.expect(d.value == 3 && naive.value == 3, "df differs from 3 or from the triple-loop oracle");
    c.expect(r.value == 3 && naive_r.value == 3, "rdf differs from 3 or from the triple-loop oracle");
    c.expect(d.witness_indices == naive.triple, "witness differs from the oracle's first minimum");
    auto core = core_of(g, *d.witness);
    c.expect(core.components.size() == 1 && core.components[0].edges.size() == 6, "core is not one 6-circuit");
    if (core.components.size() == 1) {
      c.expect(is_induced_circuit(g, core.components[0]), "core circuit not induced");
      for (int v : core.components[0].vertices) {
        int u = 0, dd = 0;
        for (Dart x : g.darts(v)) {
          u += core.uncovered.contains(x.edge);
          dd += core.doubly.contains(x.edge);
        }
        c.expect(u == 1 && dd == 1, "core does not alternate at vertex " + std::to_string(v));
      }
    }
  });

  criterion(2, "Corollary df=3 iff rdf=3 on Petersen, J5, J7, Blanusa 1 and 2", 300.0, [](Check& c) {
    for (const auto& [name, g] : corollary_set()) {
      auto d = defect(g), r = regular_defect(g);
      c.expect(d.exhaustive && r.exhaustive, name + ": not exhaustive");
      if (!d.value || !r.value) {
        c.expect(false, name + ": no value");
        continue;
      }
      c.expect((*d.value == 3) == (*r.value == 3), name + ": corollary violated");
      c.expect(verify_corollary_rdf3(g), name + ": verify_corollary_rdf3 false");
    }
  });

  criterion(3, "Triangle-inflated Petersen edges: 4/1/2 core pattern and 3 <= df <= 4", 120.0, [](Check& c) {
    auto g = petersen();
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [u, v] = g.endpoints(e);
      auto r = inflate_pair_theorem_check(g, u, v);
      auto cov = coverage(r.inflated, r.witness);
      std::string tag = "edge " + std::to_string(e);
      c.expect(cov.counts[0] == 4 && cov.counts[3] == 1 && cov.counts[2] == 2, tag + ": pattern differs");
      auto d = defect(r.inflated);
      c.expect(d.exhaustive && d.value && *d.value >= 3 && *d.value <= 4, tag + ": df outside [3,4]");
    }
  });

  criterion(4, "Girth bound rdf >= girth/2 with even core circuits of length >= girth", 0, [](Check& c) {
    for (const auto& [name, g] : suite::bridgeless()) {
      auto r = regular_defect(g);
      if (!r.value || !r.witness) continue;
      auto core = core_of(g, *r.witness);
      if (core.empty()) continue;
      int gi = oracle::girth(g);
      c.expect(2 * *r.value >= gi, name + ": rdf below girth/2");
      for (const auto& comp : core.components) {
        auto len = static_cast<int>(comp.edges.size());
        c.expect(comp.kind == CoreComponentKind::EvenAlternatingCircuit && len % 2 == 0 && len >= gi,
                 name + ": core circuit of length " + std::to_string(len));
      }
      c.expect(check_girth_bound(g, r), name + ": check_girth_bound false");
    }
  });

  criterion(5, "Fulkerson round trip on Petersen, K4, J5", 60.0, [](Check& c) {
    for (const auto& [name, g] : std::vector<suite::Named>{{"petersen", petersen()}, {"K4", complete_k4()},
                                                           {"J5", flower_snark(5)}}) {
      auto found = find_cover(g);
      if (!found.cover) {
        c.expect(false, name + ": no cover found");
        continue;
      }
      auto flows = complementary_to_flows(g, cover_to_complementary(g, *found.cover));
      auto xi = flows_to_cover(g, flows);
      auto chk = verify_cover(g, xi.cover);
      c.expect(chk.ok, name + ": " + chk.violation);
      for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> vals;
        for (Dart d : g.darts(v)) vals.insert(vals.end(), xi.xi[d.edge].begin(), xi.xi[d.edge].end());
        std::sort(vals.begin(), vals.end());
        c.expect(vals == std::vector<int>{1, 2, 3, 4, 5, 6}, name + ": xi not a partition at " + std::to_string(v));
      }
    }
  });

  criterion(6, "Nowhere-zero 4-flows iff colourable; characteristic flows on the four lines", 0, [](Check& c) {
    c.expect(!nz_4flow(petersen()).has_value(), "Petersen has a flow");
    c.expect(nz_4flow(complete_k33()).has_value(), "K33 has no flow");
    for (const auto& [name, g] : suite::bridgeless()) {
      bool col = oracle::edge_colourable(g.vertex_count(), g.edges());
      c.expect(nz_4flow(g, 4).has_value() == col, name + ": flow existence differs from colourability");
      auto r = regular_defect(g);
      if (!r.witness) continue;
      auto chk = verify_flow(g, characteristic_flow(g, *r.witness));
      c.expect(chk.ok, name + ": " + chk.violation);
      for (const auto& l : chk.vertex_lines) c.expect(in_catalogue(l), name + ": line outside catalogue");
    }
  });

  criterion(7, "Seeded property suites: core structure, Parity Lemma, matching counts", 0, [](Check& c) {
    std::mt19937 rng(7);
    for (const auto& [name, g] : suite::bridgeless()) {
      auto pms = oracle::perfect_matchings(g);
      std::uniform_int_distribution<std::size_t> pick(0, pms.size() - 1);
      for (int t = 0; t < 200; ++t) {
        ThreeArray a;
        std::vector<int> mult(g.edge_count(), 0);
        for (auto& m : a.members) {
          const auto& ids = pms[pick(rng)];
          m = EdgeSet::from_ids(g.edge_count(), ids);
          for (int e : ids) ++mult[e];
        }
        try {
          auto core = core_of(g, a);
          for (const auto& comp : core.components) {
            bool branch = false;
            for (int v : comp.vertices) {
              int deg = 0;
              for (Dart d : g.darts(v)) deg += mult[d.edge] != 1;
              branch |= deg == 3;
            }
            bool circuit = comp.kind == CoreComponentKind::EvenAlternatingCircuit;
            c.expect(circuit != branch, name + ": component kind");
            if (circuit) c.expect(comp.edges.size() % 2 == 0, name + ": odd core circuit");
          }
        } catch (const CoreStructureError& e) {
          c.expect(false, name + ": " + e.what());
        }
      }
    }
    auto graphs = suite::bridgeless();
    for (int t = 0; t < 50; ++t) {
      const auto& g = graphs[t % graphs.size()].graph;
      std::vector<int> verts(g.vertex_count());
      std::iota(verts.begin(), verts.end(), 0);
      std::shuffle(verts.begin(), verts.end(), rng);
      verts.resize(1 + t % std::min(4, g.vertex_count() - 1));
      auto pole = delete_vertices(g, verts).pole;
      int seen = 0;
      for_each_colouring(pole, [&](const EdgeColouring& col) {
        c.expect(verify_parity(pole, col).holds, "parity fails on multipole " + std::to_string(t));
        return ++seen < 256;
      });
    }
    for (const auto& [name, g] : graphs)
      if (g.vertex_count() <= 14)
        c.expect(enumerate_perfect_matchings(g).matchings.size() == oracle::count_perfect_matchings(g),
                 name + ": matching count differs from the subset DP");
  });

  criterion(8, "Byte-identical certificates with 1, 4 and 8 threads", 0, [](Check& c) {
    std::string first;
    for (unsigned threads : {1U, 4U, 8U}) {
      std::string all;
      for (const auto& [name, g] : suite::bridgeless()) {
        cert::AnalyzeOptions ao;
        ao.budget.threads = threads;
        all += cert::analyze(name, g, ao).certificate.dump() + "\n";
        cert::FulkersonOptions fo;
        fo.budget.threads = threads;
        fo.roundtrip = true;
        all += cert::fulkerson(name, g, fo).certificate.dump() + "\n";
      }
      if (first.empty()) first = all;
      c.expect(all == first, "output with " + std::to_string(threads) + " threads differs");
    }
  });

  std::printf("%s\n", failed ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return failed ? 1 : 0;
}
