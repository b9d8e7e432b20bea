#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <tuple>
#include <vector>

#include "plancanon/generators.hpp"
#include "plancanon/io.hpp"
#include "plancanon/graph.hpp"
#include "plancanon/iso.hpp"
#include "plancanon/planarity.hpp"

namespace plancanon {

// Readable GoogleTest failure output.
inline void PrintTo(const Code& c, std::ostream* os) { *os << c.to_string(); }

}  // namespace plancanon

namespace plancanon::testing {

// Every graph obtained by adding one node joined to a nonempty subset of
// the nodes of a base graph. Each connected graph on n+1 nodes arises from
// a connected graph on n nodes this way (drop any non-cut node).
inline std::vector<Graph> one_node_extensions(const std::vector<Graph>& base) {
  std::vector<Graph> out;
  for (const Graph& g : base) {
    const int n = g.node_count();
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<Edge> edges(g.edges().begin(), g.edges().end());
      for (int v = 0; v < n; ++v) {
        if (mask >> v & 1) edges.emplace_back(v, n);
      }
      out.emplace_back(n + 1, std::move(edges));
    }
  }
  return out;
}

// Isomorphism-invariant bucket key: per node (color, degree, sorted
// neighbour (color, degree) pairs), sorted.
inline std::vector<std::vector<int>> bucket_key(const Graph& g) {
  std::vector<std::vector<int>> key;
  key.push_back({g.node_count(), g.edge_count()});
  for (int v = 0; v < g.node_count(); ++v) {
    std::vector<std::pair<int, int>> nb;
    for (int w : g.neighbors(v)) nb.emplace_back(g.color(w), g.degree(w));
    std::sort(nb.begin(), nb.end());
    std::vector<int> row{g.color(v), g.degree(v)};
    for (auto [c, d] : nb) {
      row.push_back(c);
      row.push_back(d);
    }
    key.push_back(std::move(row));
  }
  std::sort(key.begin() + 1, key.end());
  return key;
}

// Isomorphism classes according to the backtracking search; returns one
// class id per graph, ids numbered in order of first appearance.
inline std::vector<int> oracle_classes(const std::vector<Graph>& graphs) {
  std::map<std::vector<std::vector<int>>, std::vector<int>> reps;  // key -> class representatives (graph index)
  std::vector<int> cls(graphs.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto& bucket = reps[bucket_key(graphs[i])];
    for (int r : bucket) {
      if (brute_force_isomorphic(graphs[r], graphs[i])) {
        cls[i] = cls[r];
        break;
      }
    }
    if (cls[i] == -1) {
      cls[i] = next++;
      bucket.push_back(static_cast<int>(i));
    }
  }
  return cls;
}

inline std::vector<Graph> class_representatives(const std::vector<Graph>& graphs, const std::vector<int>& cls) {
  std::vector<Graph> reps;
  int seen = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (cls[i] == seen) {
      reps.push_back(graphs[i]);
      ++seen;
    }
  }
  return reps;
}

// Connected planar graphs on exactly n nodes, one per isomorphism class,
// for n = 1..max_n (index n-1).
inline std::vector<std::vector<Graph>> connected_planar_representatives(int max_n) {
  std::vector<std::vector<Graph>> result;
  result.push_back({Graph(1)});
  for (int n = 2; n <= max_n; ++n) {
    std::vector<Graph> candidates;
    for (auto& g : one_node_extensions(result.back())) {
      if (is_planar(g)) candidates.push_back(std::move(g));
    }
    result.push_back(class_representatives(candidates, oracle_classes(candidates)));
  }
  return result;
}

struct PartitionDiff {
  int merges = 0;  // pairs of oracle classes sharing a code
  int splits = 0;  // oracle classes carrying more than one code
};

// Compares a partition by code with the oracle partition of the same items.
template <typename Key>
PartitionDiff compare_partitions(const std::vector<Key>& codes, const std::vector<int>& cls) {
  std::map<Key, std::vector<int>> classes_of_code;
  std::map<int, std::vector<Key>> codes_of_class;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    classes_of_code[codes[i]].push_back(cls[i]);
    codes_of_class[cls[i]].push_back(codes[i]);
  }
  PartitionDiff diff;
  for (auto& [code, cs] : classes_of_code) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    diff.merges += static_cast<int>(cs.size()) - 1;
  }
  for (auto& [c, ks] : codes_of_class) {
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    diff.splits += static_cast<int>(ks.size()) - 1;
  }
  return diff;
}

inline Graph with_colors(const Graph& g, std::vector<int> colors) {
  return Graph(g.node_count(), g.edges(), std::move(colors));
}

inline Graph k5() { return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

inline Graph k33() {
  return Graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
}

inline Graph two_triangles() { return Graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}); }

inline Graph hexagon() { return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}); }

// Random planar graph with n in [lo, hi] and a uniformly drawn edge count.
inline Graph random_planar_in(Rng& rng, int lo, int hi) {
  const int n = lo + rng.below(hi - lo + 1);
  const int max_m = n >= 3 ? 3 * n - 6 : n - 1;
  const int m = (n - 1) + rng.below(max_m - (n - 1) + 1);
  return gen_random_planar(n, m, rng.next());
}

}  // namespace plancanon::testing
