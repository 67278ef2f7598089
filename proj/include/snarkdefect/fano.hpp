#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snarkdefect/defect.hpp"
#include "snarkdefect/graph.hpp"

namespace snarkdefect {

/// Point of PG(2,2): a nonzero vector of Z2^3. Bit 2 holds x1, bit 1 x2, bit 0 x3,
/// so the 3-bit string "x1x2x3" reads as the binary value.
class FanoPoint {
 public:
  constexpr FanoPoint() = default;
  constexpr explicit FanoPoint(std::uint8_t bits) : bits_(bits & 7u) {}

  static std::optional<FanoPoint> parse(const std::string& s) {
    if (s.size() != 3) return std::nullopt;
    std::uint8_t b = 0;
    for (char c : s) {
      if (c != '0' && c != '1') return std::nullopt;
      b = static_cast<std::uint8_t>((b << 1) | (c - '0'));
    }
    return FanoPoint(b);
  }

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool is_zero() const { return bits_ == 0; }
  /// Coordinate x_i for i in {1,2,3}.
  constexpr int coord(int i) const { return (bits_ >> (3 - i)) & 1; }

  std::string str() const {
    return std::string{static_cast<char>('0' + coord(1)), static_cast<char>('0' + coord(2)),
                       static_cast<char>('0' + coord(3))};
  }

  friend constexpr FanoPoint operator+(FanoPoint a, FanoPoint b) {
    return FanoPoint(static_cast<std::uint8_t>(a.bits_ ^ b.bits_));
  }
  friend constexpr auto operator<=>(FanoPoint, FanoPoint) = default;

 private:
  std::uint8_t bits_ = 0;
};

using FanoLine = std::array<FanoPoint, 3>;  // sorted ascending

inline FanoLine make_line(FanoPoint a, FanoPoint b, FanoPoint c) {
  FanoLine l{a, b, c};
  std::sort(l.begin(), l.end());
  return l;
}

inline std::string to_string(const FanoLine& l) {
  return "{" + l[0].str() + "," + l[1].str() + "," + l[2].str() + "}";
}

/// The four lines that can occur around a vertex under a regular 3-array: the
/// line of the three simply-covered points and the three lines through 111.
inline std::array<FanoLine, 4> four_line_catalogue() {
  auto p = [](const char* s) { return *FanoPoint::parse(s); };
  std::array<FanoLine, 4> cat{
      make_line(p("011"), p("101"), p("110")),
      make_line(p("100"), p("111"), p("011")),
      make_line(p("010"), p("111"), p("101")),
      make_line(p("001"), p("111"), p("110")),
  };
  std::sort(cat.begin(), cat.end());
  return cat;
}

inline bool in_catalogue(const FanoLine& l) {
  auto cat = four_line_catalogue();
  return std::find(cat.begin(), cat.end(), l) != cat.end();
}

/// Edge id -> Z2^3 value. Not necessarily nowhere-zero when built by hand.
struct CharacteristicFlow {
  std::vector<FanoPoint> value;
};

/// x_i = 0 exactly when the edge lies in the i-th member. Requires a regular array.
inline CharacteristicFlow characteristic_flow(const CubicGraph& g, const ThreeArray& a) {
  auto cov = coverage(g, a);
  CharacteristicFlow f;
  f.value.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    std::uint8_t bits = 0;
    for (int i = 0; i < 3; ++i)
      if (!a.members[i].contains(e)) bits |= static_cast<std::uint8_t>(1u << (2 - i));
    f.value[e] = FanoPoint(bits);
    if (cov.multiplicity[e] == 3)
      throw GraphError("3-array is not regular: edge " + std::to_string(e) + " is triply covered");
  }
  return f;
}

struct FlowCheck {
  bool ok = true;
  std::string violation;            // first violation, empty when ok
  std::vector<FanoLine> vertex_lines;  // per vertex
};

/// Nowhere-zero, Kirchhoff at every vertex, every vertex line in the four-line
/// catalogue, and proper as an edge colouring.
inline FlowCheck verify_flow(const CubicGraph& g, const CharacteristicFlow& f) {
  FlowCheck r;
  auto fail = [&](std::string why) {
    if (r.ok) r.violation = std::move(why);
    r.ok = false;
  };
  if (static_cast<int>(f.value.size()) != g.edge_count()) {
    fail("flow is not total on the edge set");
    return r;
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (f.value[e].is_zero()) fail("nowhere-zero violated at edge " + std::to_string(e));
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& d = g.darts(v);
    FanoPoint a = f.value[d[0].edge], b = f.value[d[1].edge], c = f.value[d[2].edge];
    auto line = make_line(a, b, c);
    r.vertex_lines.push_back(line);
    if (!(a + b + c).is_zero()) {
      fail("Kirchhoff violated at vertex " + std::to_string(v));
      continue;
    }
    if (a == b || b == c || a == c) fail("not a proper edge colouring at vertex " + std::to_string(v));
    if (!in_catalogue(line)) fail("vertex " + std::to_string(v) + " carries line " + to_string(line) + " outside the catalogue");
  }
  return r;
}

/// Recovers the three members from a flow: edge e lies in M_i iff x_i = 0.
inline ThreeArray members_from_flow(const CharacteristicFlow& f) {
  const int m = static_cast<int>(f.value.size());
  ThreeArray a{{EdgeSet(m), EdgeSet(m), EdgeSet(m)}};
  for (int e = 0; e < m; ++e)
    for (int i = 0; i < 3; ++i)
      if (f.value[e].coord(i + 1) == 0) a.members[i].insert(e);
  return a;
}

}  // namespace snarkdefect
