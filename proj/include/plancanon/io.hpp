#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "plancanon/error.hpp"
#include "plancanon/graph.hpp"

namespace plancanon {

// ---------------------------------------------------------------------------
// graph6 (uncolored graphs, one per line)
// ---------------------------------------------------------------------------

namespace detail {

constexpr int kG6Bias = 63;
constexpr std::string_view kG6Header = ">>graph6<<";

inline int g6_value(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) throw ParseError("graph6 text ends prematurely", pos);
  auto c = static_cast<unsigned char>(text[pos]);
  if (c < 63 || c > 126) {
    throw ParseError("byte 0x" + [&] {
      const char* hex = "0123456789abcdef";
      return std::string{hex[c >> 4], hex[c & 15]};
    }() + " is outside the graph6 range 63..126", pos);
  }
  return c - kG6Bias;
}

}  // namespace detail

inline Graph parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  std::size_t pos = 0;
  if (text.substr(0, detail::kG6Header.size()) == detail::kG6Header) pos = detail::kG6Header.size();
  if (pos >= text.size()) throw ParseError("missing graph6 size header", pos);
  if (text[pos] == ':' || text[pos] == '&') {
    throw ParseError("sparse6/digraph6 input is not supported", pos);
  }

  std::int64_t n = 0;
  if (text[pos] != '~') {
    n = detail::g6_value(text, pos++);
  } else if (pos + 1 < text.size() && text[pos + 1] == '~') {
    pos += 2;
    for (int i = 0; i < 6; ++i) n = (n << 6) | detail::g6_value(text, pos++);
  } else {
    pos += 1;
    for (int i = 0; i < 3; ++i) n = (n << 6) | detail::g6_value(text, pos++);
  }
  if (n > (1 << 28)) throw ParseError("graph6 node count too large", 0);

  const std::int64_t bits = n * (n - 1) / 2;
  const std::int64_t bytes = (bits + 5) / 6;
  std::vector<Edge> edges;
  std::int64_t bit = 0;
  int i = 0, j = 1;
  for (std::int64_t b = 0; b < bytes; ++b, ++pos) {
    const int value = detail::g6_value(text, pos);
    for (int k = 5; k >= 0; --k, ++bit) {
      const bool set = (value >> k) & 1;
      if (bit >= bits) {
        if (set) throw ParseError("non-zero graph6 padding bits", pos);
        continue;
      }
      if (set) edges.emplace_back(i, j);
      if (++i == j) {
        i = 0;
        ++j;
      }
    }
  }
  if (pos != text.size()) throw ParseError("trailing characters after graph6 data", pos);
  return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string serialize_graph6(const Graph& g) {
  std::string out;
  const std::int64_t n = g.node_count();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + detail::kG6Bias));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + detail::kG6Bias));
  } else {
    out += "~~";
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + detail::kG6Bias));
  }
  const std::int64_t bits = n * (n - 1) / 2;
  std::vector<std::uint8_t> packed((bits + 5) / 6, 0);
  for (auto [u, v] : g.edges()) {
    // u < v; column-major upper triangle index.
    const std::int64_t index = static_cast<std::int64_t>(v) * (v - 1) / 2 + u;
    packed[index / 6] |= static_cast<std::uint8_t>(1u << (5 - index % 6));
  }
  for (auto byte : packed) out.push_back(static_cast<char>(byte + detail::kG6Bias));
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list JSON: {"n": int, "edges": [[u,v],...], "colors": [...]}
// ---------------------------------------------------------------------------

inline Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("edge-list record must be a JSON object");
  if (!j.contains("n")) throw ValidationError("missing field \"n\"");
  if (!j.contains("edges")) throw ValidationError("missing field \"edges\"");
  const auto& jn = j.at("n");
  if (!jn.is_number_integer() || jn.get<std::int64_t>() < 0) {
    throw ValidationError("field \"n\" must be a non-negative integer");
  }
  const auto& je = j.at("edges");
  if (!je.is_array()) throw ValidationError("field \"edges\" must be an array");
  std::vector<Edge> edges;
  edges.reserve(je.size());
  for (const auto& e : je) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw ValidationError("each edge must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  std::vector<int> colors;
  if (j.contains("colors")) {
    const auto& jc = j.at("colors");
    if (!jc.is_array()) throw ValidationError("field \"colors\" must be an array");
    for (const auto& c : jc) {
      if (!c.is_number_integer()) throw ValidationError("colors must be integers");
      colors.push_back(c.get<int>());
    }
    if (colors.size() != jn.get<std::size_t>()) {
      throw ValidationError("color array length " + std::to_string(colors.size()) +
                            " does not match n = " + std::to_string(jn.get<std::int64_t>()));
    }
  }
  return Graph(jn.get<int>(), std::move(edges), std::move(colors));
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.node_count()}, {"edges", std::move(edges)}, {"colors", g.colors()}};
}

inline Graph parse_edge_list(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  return graph_from_json(j);
}

inline std::string serialize_edge_list(const Graph& g) { return graph_to_json(g).dump(); }

// ---------------------------------------------------------------------------
// Multi-graph files: one graph per line, graph6 or edge-list JSON.
// ---------------------------------------------------------------------------

enum class GraphFormat { kGraph6, kEdgeList };

// A line is JSON when '{' is followed by '"' or whitespace. Neither can occur
// in graph6, where '{' itself is the size byte of a 60-node graph.
inline Graph parse_graph_line(std::string_view line) {
  std::size_t start = line.find_first_not_of(" \t");
  if (start != std::string_view::npos && line[start] == '{') {
    const char next = start + 1 < line.size() ? line[start + 1] : '\0';
    if (next == '"' || next == ' ' || next == '\t' || next == '\n' || next == '\r') return parse_edge_list(line);
  }
  return parse_graph6(line.substr(start == std::string_view::npos ? line.size() : start));
}

// Errors are rethrown with the 1-based line number prefixed.
inline std::vector<Graph> read_graphs(std::istream& in) {
  std::vector<Graph> graphs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      graphs.push_back(parse_graph_line(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.raw(), e.offset());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return graphs;
}

inline std::vector<Graph> read_graphs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_graphs(in);
}

inline std::string serialize_graph(const Graph& g, GraphFormat format) {
  return format == GraphFormat::kGraph6 ? serialize_graph6(g) : serialize_edge_list(g);
}

}  // namespace plancanon
