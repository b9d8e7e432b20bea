#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "plancanon/error.hpp"
#include "plancanon/graph.hpp"
#include "plancanon/khc.hpp"

namespace plancanon {

// Code equality. Throws NotPlanarError if either graph is not planar.
inline bool is_isomorphic(const Graph& g1, const Graph& g2) {
  if (g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count()) {
    // Still reject non-planar input consistently.
    if (!is_planar(g1)) throw NotPlanarError(kuratowski_witness(g1));
    if (!is_planar(g2)) throw NotPlanarError(kuratowski_witness(g2));
    return false;
  }
  return graph_code(g1) == graph_code(g2);
}

inline constexpr int kDefaultBruteForceBound = 10;

// Backtracking search for a color- and adjacency-preserving bijection.
// Independent of the canonical coder; meant as a test oracle.
inline bool brute_force_isomorphic(const Graph& g1, const Graph& g2, int bound = kDefaultBruteForceBound) {
  const int n = g1.node_count();
  if (n > bound || g2.node_count() > bound) {
    throw ArgumentError("brute_force_isomorphic is limited to " + std::to_string(bound) + " nodes");
  }
  if (n != g2.node_count() || g1.edge_count() != g2.edge_count()) return false;
  auto profile = [](const Graph& g) {
    std::vector<std::pair<int, int>> p;
    for (int v = 0; v < g.node_count(); ++v) p.emplace_back(g.color(v), g.degree(v));
    std::sort(p.begin(), p.end());
    return p;
  };
  if (profile(g1) != profile(g2)) return false;
  if (n == 0) return true;

  // Order g1's nodes so each one is adjacent to as many earlier ones as possible.
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  std::vector<int> links(n, 0);
  for (int k = 0; k < n; ++k) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (best == -1 || links[v] > links[best] || (links[v] == links[best] && g1.degree(v) > g1.degree(best))) {
        best = v;
      }
    }
    placed[best] = 1;
    order.push_back(best);
    for (int w : g1.neighbors(best)) ++links[w];
  }

  std::vector<int> map(n, -1), used(n, 0);
  std::vector<int> next(n, 0);
  int depth = 0;
  while (depth >= 0) {
    if (depth == n) return true;
    const int v = order[depth];
    if (map[v] != -1) {
      used[map[v]] = 0;
      map[v] = -1;
    }
    bool advanced = false;
    for (int& w = next[depth]; w < n; ++w) {
      if (used[w] || g2.color(w) != g1.color(v) || g2.degree(w) != g1.degree(v)) continue;
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) {
        const int u = order[k];
        ok = g1.has_edge(u, v) == g2.has_edge(map[u], w);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      ++w;
      advanced = true;
      break;
    }
    if (advanced) {
      ++depth;
      if (depth < n) next[depth] = 0;
    } else {
      next[depth] = 0;
      --depth;
    }
  }
  return false;
}

// Stable 1-WL refinement. Colors are re-indexed every round by ranking the
// signatures (old color, sorted neighbour colors); `tables` keeps the sorted
// signature list of every round, so two colorings compare equal exactly
// when 1-WL does not distinguish the graphs.
struct WlColoring {
  int rounds = 0;
  std::vector<int> histogram;  // sorted final color ids
  std::vector<std::vector<std::vector<int>>> tables;

  friend bool operator==(const WlColoring&, const WlColoring&) = default;
};

inline WlColoring wl1_histogram(const Graph& g) {
  const int n = g.node_count();
  WlColoring out;
  std::vector<int> color(n);
  {
    std::vector<int> initial(g.colors().begin(), g.colors().end());
    std::vector<int> distinct = initial;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < n; ++v) {
      color[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), initial[v]) - distinct.begin());
    }
    std::vector<std::vector<int>> table;
    for (int c : distinct) table.push_back({c});
    out.tables.push_back(std::move(table));
  }
  int classes = static_cast<int>(out.tables[0].size());
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].push_back(color[v]);
      for (int w : g.neighbors(v)) sig[v].push_back(color[w]);
      std::sort(sig[v].begin() + 1, sig[v].end());
    }
    std::vector<std::vector<int>> table = sig;
    std::sort(table.begin(), table.end());
    table.erase(std::unique(table.begin(), table.end()), table.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      next[v] = static_cast<int>(std::lower_bound(table.begin(), table.end(), sig[v]) - table.begin());
    }
    const int now = static_cast<int>(table.size());
    if (now == classes) break;
    ++out.rounds;
    out.tables.push_back(std::move(table));
    color = std::move(next);
    classes = now;
  }
  out.histogram = color;
  std::sort(out.histogram.begin(), out.histogram.end());
  return out;
}

}  // namespace plancanon
