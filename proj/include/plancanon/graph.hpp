#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plancanon/error.hpp"

namespace plancanon {

using Edge = std::pair<int, int>;

// Simple undirected graph with integer node colors over dense ids 0..n-1.
//
// Edges are normalized to (min, max) and stored sorted, so two graphs
// compare equal iff they have the same node count, edge set and colors.
// A Graph is immutable after construction.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int node_count, std::vector<Edge> edges = {},
                 std::vector<int> colors = {})
      : node_count_(node_count), edges_(std::move(edges)), colors_(std::move(colors)) {
    if (node_count_ < 0) throw ValidationError("negative node count");
    if (colors_.empty()) colors_.assign(node_count_, 0);
    if (static_cast<int>(colors_.size()) != node_count_) {
      throw ValidationError("color array length " + std::to_string(colors_.size()) +
                            " does not match node count " + std::to_string(node_count_));
    }
    for (int c : colors_) {
      if (c < 0) throw ValidationError("colors must be non-negative");
    }
    for (auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_) {
        throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                              ") has an endpoint outside 0.." + std::to_string(node_count_ - 1));
      }
      if (u == v) throw ValidationError("self-loop at node " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw ValidationError("duplicate edge (" + std::to_string(dup->first) + "," +
                            std::to_string(dup->second) + ")");
    }
    adjacency_.assign(node_count_, {});
    for (auto [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
  }

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& colors() const { return colors_; }
  int color(int v) const { return colors_[v]; }
  std::span<const int> neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

  bool has_edge(int u, int v) const {
    const auto& row = adjacency_[u];
    return std::binary_search(row.begin(), row.end(), v);
  }

  std::vector<int> degree_sequence() const {
    std::vector<int> d(node_count_);
    for (int v = 0; v < node_count_; ++v) d[v] = degree(v);
    std::sort(d.begin(), d.end());
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_ && a.colors_ == b.colors_;
  }

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> colors_;
  std::vector<std::vector<int>> adjacency_;
};

// Bijection on 0..n-1. Node v of the source graph becomes node mapping[v].
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    std::vector<char> seen(mapping_.size(), 0);
    for (int x : mapping_) {
      if (x < 0 || x >= static_cast<int>(mapping_.size()) || seen[x]) {
        throw ArgumentError("permutation is not a bijection on 0..n-1");
      }
      seen[x] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
  }

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator()(int v) const { return mapping_[v]; }
  const std::vector<int>& mapping() const { return mapping_; }

  Permutation inverse() const {
    std::vector<int> inv(mapping_.size());
    for (int v = 0; v < size(); ++v) inv[mapping_[v]] = v;
    return Permutation(std::move(inv));
  }

  // (p * q)(v) = p(q(v)): apply q first, then p.
  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw ArgumentError("permutation sizes differ");
    std::vector<int> m(q.size());
    for (int v = 0; v < q.size(); ++v) m[v] = p(q(v));
    return Permutation(std::move(m));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> mapping_;
};

// Relabels node v as p(v); colors travel with their nodes.
inline Graph apply_permutation(const Graph& g, const Permutation& p) {
  if (p.size() != g.node_count()) {
    throw ArgumentError("permutation length " + std::to_string(p.size()) +
                        " does not match node count " + std::to_string(g.node_count()));
  }
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (auto [u, v] : g.edges()) edges.emplace_back(p(u), p(v));
  std::vector<int> colors(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) colors[p(v)] = g.color(v);
  return Graph(g.node_count(), std::move(edges), std::move(colors));
}

// Subgraph induced by `nodes` (listed in the order they become 0..k-1).
inline Graph induced_subgraph(const Graph& g, std::span<const int> nodes) {
  std::vector<int> local(g.node_count(), -1);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) local[nodes[i]] = i;
  std::vector<Edge> edges;
  std::vector<int> colors;
  colors.reserve(nodes.size());
  for (int v : nodes) {
    colors.push_back(g.color(v));
    for (int w : g.neighbors(v)) {
      if (local[w] > local[v]) edges.emplace_back(local[v], local[w]);
    }
  }
  return Graph(static_cast<int>(nodes.size()), std::move(edges), std::move(colors));
}

inline bool is_connected(const Graph& g) {
  if (g.node_count() <= 1) return true;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.node_count();
}

}  // namespace plancanon
