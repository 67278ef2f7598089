#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "snarkdefect/graph.hpp"

namespace snarkdefect {

class ParseError : public GraphError {
 public:
  using GraphError::GraphError;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline int parse_int(std::string_view tok, const std::string& what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("expected integer for " + what + ", got '" + std::string(tok) + "'");
  return value;
}

// "e17.1" -> Dart{17, 1}
inline Dart parse_dart(std::string_view tok) {
  if (tok.size() < 4 || tok[0] != 'e') throw ParseError("malformed edge-end token '" + std::string(tok) + "'");
  auto dot = tok.find('.');
  if (dot == std::string_view::npos) throw ParseError("malformed edge-end token '" + std::string(tok) + "'");
  Dart d{parse_int(tok.substr(1, dot - 1), "edge id"), parse_int(tok.substr(dot + 1), "end index")};
  if (d.end != 0 && d.end != 1) throw ParseError("end index must be 0 or 1 in '" + std::string(tok) + "'");
  return d;
}

}  // namespace detail

/// Decodes one graph6 line (optional ">>graph6<<" header). Edges come out
/// sorted by (smaller endpoint, larger endpoint).
inline CubicGraph parse_graph6(std::string_view text) {
  text = detail::trim(text);
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  if (text.empty()) throw ParseError("empty graph6 string");
  for (char c : text)
    if (c < 63 || c > 126) throw ParseError("graph6 byte out of range");

  std::size_t pos = 0;
  auto byte = [&](std::size_t i) -> std::uint64_t {
    if (i >= text.size()) throw ParseError("truncated graph6 string");
    return static_cast<std::uint64_t>(text[i] - 63);
  };
  std::uint64_t n = 0;
  if (text[0] != 126) {
    n = byte(0);
    pos = 1;
  } else if (text.size() > 1 && text[1] != 126) {
    n = (byte(1) << 12) | (byte(2) << 6) | byte(3);
    pos = 4;
  } else {
    n = 0;
    for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | byte(i);
    pos = 8;
  }
  if (n > (1u << 20)) throw ParseError("graph6 vertex count too large");

  std::uint64_t bits_needed = n * (n - (n ? 1 : 0)) / 2;
  std::uint64_t chars_needed = (bits_needed + 5) / 6;
  if (text.size() - pos != chars_needed)
    throw ParseError("graph6 length mismatch: expected " + std::to_string(chars_needed) + " data bytes, got " +
                     std::to_string(text.size() - pos));

  std::vector<std::array<int, 2>> edges;
  std::uint64_t bit = 0;
  for (std::uint64_t j = 1; j < n; ++j)
    for (std::uint64_t i = 0; i < j; ++i, ++bit) {
      auto chunk = byte(pos + bit / 6);
      if ((chunk >> (5 - bit % 6)) & 1) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  std::sort(edges.begin(), edges.end());
  return CubicGraph(static_cast<int>(n), std::move(edges));
}

/// Encodes a simple graph as graph6. Rejects loops and parallel edges.
inline std::string to_graph6(const CubicGraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [a, b] : g.edges()) {
    if (a == b) throw GraphError("graph6 cannot encode loops");
    if (adj[a][b]) throw GraphError("graph6 cannot encode parallel edges");
    adj[a][b] = adj[b][a] = 1;
  }
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n < 258048) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    throw GraphError("graph too large for this graph6 writer");
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | adj[i][j];
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  if (nbits) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

/// Parses the edge-list format:
///
///     # comment
///     vertices N
///     A B            (one line per edge; A,B vertex index or '-')
///     connector NAME: e17.1 e20.0 ...
///
/// Without connector lines, any free ends form a single connector "S".
inline Multipole parse_edge_list(std::string_view text) {
  int n = -1;
  std::vector<std::array<int, 2>> edges;
  std::vector<Connector> conns;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  try {
    while (std::getline(in, raw)) {
      ++lineno;
      std::string_view line = raw;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      auto toks = detail::split_ws(line);
      if (toks[0] == "vertices") {
        if (toks.size() != 2 || n >= 0) throw ParseError("bad or repeated 'vertices' header");
        n = detail::parse_int(toks[1], "vertex count");
      } else if (toks[0] == "connector") {
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("connector line needs ':'");
        Connector c;
        c.name = std::string(detail::trim(line.substr(9, colon - 9)));
        if (c.name.empty()) throw ParseError("connector without a name");
        for (auto tok : detail::split_ws(line.substr(colon + 1))) c.ends.push_back(detail::parse_dart(tok));
        conns.push_back(std::move(c));
      } else {
        if (n < 0) throw ParseError("edge before 'vertices' header");
        if (toks.size() != 2) throw ParseError("edge line needs exactly two endpoints");
        std::array<int, 2> e{};
        for (int k = 0; k < 2; ++k) e[k] = toks[k] == "-" ? kFree : detail::parse_int(toks[k], "endpoint");
        edges.push_back(e);
      }
    }
  } catch (const ParseError& err) {
    throw ParseError("line " + std::to_string(lineno) + ": " + err.what());
  }
  if (n < 0) throw ParseError("missing 'vertices' header");
  if (conns.empty()) {
    Connector all{"S", {}};
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      for (int k = 0; k < 2; ++k)
        if (edges[e][k] == kFree) all.ends.push_back({e, k});
    if (!all.ends.empty()) conns.push_back(std::move(all));
  }
  return Multipole(n, std::move(edges), std::move(conns));
}

inline std::string to_edge_list(const Multipole& m) {
  std::ostringstream out;
  out << "vertices " << m.vertex_count() << "\n";
  for (auto [a, b] : m.edges()) {
    auto tok = [](int v) { return v == kFree ? std::string("-") : std::to_string(v); };
    out << tok(a) << " " << tok(b) << "\n";
  }
  for (const auto& c : m.connectors()) {
    out << "connector " << c.name << ":";
    for (Dart d : c.ends) out << " " << to_string(d);
    out << "\n";
  }
  return out.str();
}

inline std::string to_edge_list(const CubicGraph& g) { return to_edge_list(Multipole(g)); }

/// FNV-1a 64-bit digest of the edge-list serialization, as 16 hex digits.
inline std::string graph_hash(const CubicGraph& g) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 15];
  return out;
}

}  // namespace snarkdefect
