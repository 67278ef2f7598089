#pragma once

// The graph suite shared by the test binaries.

#include <fstream>
#include <string>
#include <vector>

#include "snarkdefect/constructions.hpp"
#include "snarkdefect/io.hpp"
#include "snarkdefect/structure.hpp"

namespace suite {

using namespace snarkdefect;

struct Named {
  std::string name;
  CubicGraph graph;
};

inline std::vector<std::string> read_lines(const std::string& file) {
  std::ifstream in(std::string(SNARKDEFECT_TEST_DATA) + "/" + file);
  if (!in) throw std::runtime_error("missing test data " + file);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

inline std::vector<CubicGraph> read_graph6(const std::string& file) {
  std::vector<CubicGraph> out;
  for (const auto& l : read_lines(file)) out.push_back(parse_graph6(l));
  return out;
}

/// Two Petersen copies with one edge cut in each and the four ends rejoined
/// across: a 2-edge cycle-separating cut.
inline CubicGraph petersen_pair_2cut() {
  auto p = petersen();
  std::vector<std::array<int, 2>> edges;
  for (int copy = 0; copy < 2; ++copy)
    for (int e = 1; e < p.edge_count(); ++e) edges.push_back({p.endpoints(e)[0] + 10 * copy, p.endpoints(e)[1] + 10 * copy});
  edges.push_back({0, 10});
  edges.push_back({1, 11});
  return CubicGraph(20, std::move(edges));
}

/// Snarks on which df and rdf are computed exhaustively.
inline std::vector<Named> snarks() {
  auto bl = read_graph6("blanusa.g6");
  return {{"petersen", petersen()},
          {"J5", flower_snark(5)},
          {"J7", flower_snark(7)},
          {"blanusa1", bl.at(0)},
          {"blanusa2", bl.at(1)}};
}

/// Colourable graphs, including multigraphs.
inline std::vector<Named> colourable() {
  return {{"K4", complete_k4()},
          {"K33", complete_k33()},
          {"theta", theta_graph()},
          {"prism", inflate_to_triangle(complete_k4(), 0)},
          {"Q3", bipartite_double(complete_k4())},
          {"desargues", bipartite_double(petersen())}};
}

/// Everything bridgeless: snarks, colourable graphs, inflated snarks.
inline std::vector<Named> bridgeless() {
  auto out = snarks();
  for (auto& x : colourable()) out.push_back(std::move(x));
  out.push_back({"petersen-inflated-pair", inflate_pair_theorem_check(petersen(), 0, 1).inflated});
  out.push_back({"petersen-inflated-vertex", inflate_to_triangle(petersen(), 0)});
  out.push_back({"J3", flower_snark(3)});
  out.push_back({"petersen-2cut", petersen_pair_2cut()});
  return out;
}

}  // namespace suite
