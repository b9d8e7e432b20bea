#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "plancanon/error.hpp"
#include "plancanon/graph.hpp"
#include "plancanon/khc.hpp"
#include "plancanon/planarity.hpp"

namespace plancanon {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-item seed derived from a base seed and an index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index + 0x632be59bd9b4e019ULL));
}

// mt19937_64 with platform-independent bounded draws (the standard
// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ArgumentError("Rng::below requires a positive bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }
  int below(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(static_cast<std::uint64_t>(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Uniform labeled tree via a random Pruefer sequence.
inline Graph gen_random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("random tree needs n >= 1");
  if (n == 1) return Graph(1, {});
  if (n == 2) return Graph(2, {{0, 1}});
  Rng rng(seed);
  std::vector<int> prufer(n - 2);
  for (int& x : prufer) x = rng.below(n);
  std::vector<int> degree(n, 1);
  for (int x : prufer) ++degree[x];
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : prufer) {
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return Graph(n, std::move(edges));
}

// Connected planar graph with n nodes and at most m edges: a random tree
// with random rotations, then chords inserted inside a face between the
// corner of a random dart and a corner a few steps further along the same
// face. Such an insertion always keeps the embedding planar. Stops after m
// edges or 10*m attempts.
inline Graph gen_random_planar(int n, int m, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("random planar graph needs n >= 1");
  const long long max_m = n >= 3 ? 3LL * n - 6 : n - 1;
  if (m > max_m) throw ArgumentError("m exceeds the planar bound 3n-6");
  if (m < n - 1) throw ArgumentError("m must be at least n-1 for a connected graph");
  Graph tree = gen_random_tree(n, seed);
  if (n < 3) return tree;
  Rng rng(derive_seed(seed, 1));

  std::vector<int> tail, succ, pred;
  std::vector<std::vector<int>> out(n);
  auto add_dart = [&](int u) {
    tail.push_back(u);
    succ.push_back(-1);
    pred.push_back(-1);
    return static_cast<int>(tail.size()) - 1;
  };
  std::unordered_set<std::uint64_t> present;
  auto key = [n](int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
  };
  for (auto [u, v] : tree.edges()) {
    out[u].push_back(add_dart(u));
    out[v].push_back(add_dart(v));
    present.insert(key(u, v));
  }
  for (int v = 0; v < n; ++v) {
    rng.shuffle(out[v]);
    const int k = static_cast<int>(out[v].size());
    for (int i = 0; i < k; ++i) {
      succ[out[v][i]] = out[v][(i + 1) % k];
      pred[out[v][(i + 1) % k]] = out[v][i];
    }
  }
  auto face_next = [&](int d) { return succ[d ^ 1]; };
  auto insert_before = [&](int at, int d) {
    const int p = pred[at];
    succ[p] = d;
    pred[d] = p;
    succ[d] = at;
    pred[at] = d;
  };

  std::vector<Edge> edges(tree.edges().begin(), tree.edges().end());
  const long long budget = 10LL * m;
  for (long long attempt = 0; attempt < budget && static_cast<int>(edges.size()) < m; ++attempt) {
    const int d0 = rng.below(static_cast<int>(tail.size()));
    const int steps = 2 + rng.below(6);
    int dk = d0;
    bool wrapped = false;
    for (int s = 0; s < steps; ++s) {
      dk = face_next(dk);
      if (dk == d0) {
        wrapped = true;
        break;
      }
    }
    if (wrapped) continue;
    const int a = tail[d0], b = tail[dk];
    if (a == b || present.count(key(a, b))) continue;
    const int x = add_dart(a);
    const int rx = add_dart(b);
    insert_before(d0, x);
    insert_before(dk, rx);
    present.insert(key(a, b));
    edges.emplace_back(a, b);
  }
  return Graph(n, std::move(edges));
}

// Seeded uniform relabeling; returns the relabeled graph and the
// permutation applied (node v of g becomes node p(v)).
inline std::pair<Graph, Permutation> scramble(const Graph& g, std::uint64_t seed) {
  std::vector<int> mapping(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) mapping[i] = i;
  Rng rng(seed);
  rng.shuffle(mapping);
  Permutation p(std::move(mapping));
  return {apply_permutation(g, p), p};
}

// Every connected 3-regular planar graph on 10 nodes, one per isomorphism
// class, ordered by canonical code.
inline std::vector<Graph> gen_p3r() {
  constexpr int n = 10;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<int> deg(n, 0);
  std::vector<Edge> edges;
  std::vector<std::pair<Code, Graph>> found;

  // Fill the lowest node that still needs edges; a partner that has no
  // edges yet is only tried in its lowest-numbered form.
  struct Frame {
    int u;
    int next;
  };
  std::vector<Frame> stack;
  auto open_node = [&]() {
    for (int v = 0; v < n; ++v) {
      if (deg[v] < 3) return v;
    }
    return -1;
  };
  auto record = [&]() {
    Graph g(n, edges);
    if (!is_connected(g) || !is_planar(g)) return;
    Code c = graph_code(g);
    for (const auto& f : found) {
      if (f.first == c) return;
    }
    found.emplace_back(std::move(c), std::move(g));
  };
  int u = open_node();
  stack.push_back({u, u + 1});
  while (!stack.empty()) {
    Frame& f = stack.back();
    bool pushed = false;
    while (f.next < n) {
      const int w = f.next++;
      if (deg[w] >= 3 || adj[f.u][w]) continue;
      if (deg[w] == 0) {
        bool earlier_fresh = false;
        for (int z = f.u + 1; z < w; ++z) earlier_fresh = earlier_fresh || deg[z] == 0;
        if (earlier_fresh) continue;
      }
      adj[f.u][w] = adj[w][f.u] = 1;
      ++deg[f.u];
      ++deg[w];
      edges.emplace_back(f.u, w);
      const int nu = open_node();
      if (nu == -1) {
        record();
        adj[f.u][w] = adj[w][f.u] = 0;
        --deg[f.u];
        --deg[w];
        edges.pop_back();
        continue;
      }
      stack.push_back({nu, nu == f.u ? w + 1 : nu + 1});
      pushed = true;
      break;
    }
    if (pushed) continue;
    stack.pop_back();
    if (!stack.empty()) {
      const Edge e = edges.back();
      adj[e.first][e.second] = adj[e.second][e.first] = 0;
      --deg[e.first];
      --deg[e.second];
      edges.pop_back();
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Graph> result;
  for (auto& f : found) result.push_back(std::move(f.second));
  return result;
}

struct GenSpec {
  enum class Kind { kP3r, kRandomPlanar, kRandomTree, kScramble };
  Kind kind = Kind::kRandomPlanar;
  int n = 1;
  int m = 0;
  std::uint64_t seed = 0;
  int count = 1;
};

// Runs a spec. Graph i uses seed derive_seed(seed, i). kScramble relabels
// the P3R set; p3r ignores n, m and count.
inline std::vector<Graph> generate(const GenSpec& spec) {
  if (spec.count < 0) throw ArgumentError("count must be non-negative");
  std::vector<Graph> out;
  switch (spec.kind) {
    case GenSpec::Kind::kP3r:
      return gen_p3r();
    case GenSpec::Kind::kRandomPlanar:
      for (int i = 0; i < spec.count; ++i) out.push_back(gen_random_planar(spec.n, spec.m, derive_seed(spec.seed, i)));
      return out;
    case GenSpec::Kind::kRandomTree:
      for (int i = 0; i < spec.count; ++i) out.push_back(gen_random_tree(spec.n, derive_seed(spec.seed, i)));
      return out;
    case GenSpec::Kind::kScramble: {
      auto base = gen_p3r();
      for (int i = 0; i < spec.count; ++i) {
        out.push_back(scramble(base[i % base.size()], derive_seed(spec.seed, i)).first);
      }
      return out;
    }
  }
  return out;
}

}  // namespace plancanon
