#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "plancanon/error.hpp"
#include "plancanon/graph.hpp"

namespace plancanon {

// Directed half-edge. Edge i of an embedded edge list owns darts 2i
// (first endpoint -> second) and 2i+1 (the reverse).
struct Dart {
  int id = -1;
  int tail = -1;
  int head = -1;
  int reverse_id = -1;
};

inline constexpr int reverse_dart(int d) { return d ^ 1; }
inline constexpr int dart_edge(int d) { return d >> 1; }

// Combinatorial embedding: a cyclic order of outgoing darts around every
// node. Faces are traced with face_next(d) = successor of reverse(d) in the
// rotation at head(d).
class RotationSystem {
 public:
  RotationSystem() = default;

  // `edges[i]` defines darts 2i and 2i+1; `rotations[v]` lists the darts
  // leaving v in cyclic order.
  RotationSystem(int node_count, std::vector<Edge> edges, std::vector<std::vector<int>> rotations)
      : node_count_(node_count), edges_(std::move(edges)), rotations_(std::move(rotations)) {
    if (static_cast<int>(rotations_.size()) != node_count_) {
      throw ArgumentError("rotation system needs one rotation per node");
    }
    position_.assign(2 * edges_.size(), -1);
    for (int v = 0; v < node_count_; ++v) {
      for (int i = 0; i < static_cast<int>(rotations_[v].size()); ++i) {
        const int d = rotations_[v][i];
        if (d < 0 || d >= dart_count()) throw ArgumentError("rotation references unknown dart");
        if (tail(d) != v) throw ArgumentError("dart listed in the rotation of a node it does not leave");
        if (position_[d] != -1) throw ArgumentError("dart listed twice in rotation system");
        position_[d] = i;
      }
    }
    for (int d = 0; d < dart_count(); ++d) {
      if (position_[d] == -1) throw ArgumentError("dart missing from rotation system");
    }
  }

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int dart_count() const { return 2 * edge_count(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& rotations() const { return rotations_; }
  std::span<const int> rotation(int v) const { return rotations_[v]; }

  int tail(int d) const { return (d & 1) ? edges_[d >> 1].second : edges_[d >> 1].first; }
  int head(int d) const { return (d & 1) ? edges_[d >> 1].first : edges_[d >> 1].second; }
  Dart dart(int d) const { return Dart{d, tail(d), head(d), reverse_dart(d)}; }

  int succ(int d) const {
    const auto& rot = rotations_[tail(d)];
    const int p = position_[d] + 1;
    return rot[p == static_cast<int>(rot.size()) ? 0 : p];
  }
  int pred(int d) const {
    const auto& rot = rotations_[tail(d)];
    const int p = position_[d];
    return rot[p == 0 ? rot.size() - 1 : p - 1];
  }
  int face_next(int d) const { return succ(reverse_dart(d)); }

  // Faces as dart cycles, in order of their smallest dart.
  std::vector<std::vector<int>> faces() const {
    std::vector<char> used(dart_count(), 0);
    std::vector<std::vector<int>> result;
    for (int start = 0; start < dart_count(); ++start) {
      if (used[start]) continue;
      std::vector<int> face;
      int d = start;
      do {
        used[d] = 1;
        face.push_back(d);
        d = face_next(d);
      } while (d != start);
      result.push_back(std::move(face));
    }
    return result;
  }

  int face_count() const { return static_cast<int>(faces().size()); }

  // V - E + F for a connected embedding; 2 iff the embedding is planar.
  int euler_characteristic() const {
    int isolated = 0;
    for (const auto& rot : rotations_) isolated += rot.empty();
    // An isolated node is a component with one face and no darts.
    return node_count_ - edge_count() + face_count() + isolated;
  }

  friend bool operator==(const RotationSystem& a, const RotationSystem& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_ && a.rotations_ == b.rotations_;
  }

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> rotations_;
  std::vector<int> position_;
};

// Reverses every rotation. mirror(mirror(rs)) == rs.
inline RotationSystem mirror(const RotationSystem& rs) {
  auto rotations = rs.rotations();
  for (auto& rot : rotations) std::reverse(rot.begin(), rot.end());
  return RotationSystem(rs.node_count(), rs.edges(), std::move(rotations));
}

namespace detail {

// Left-right planarity test with embedding extraction. Works on a simple
// graph given as an edge list; all recursion is unrolled onto explicit
// stacks so deep DFS trees are safe.
class LrPlanarity {
 public:
  LrPlanarity(int n, std::span<const Edge> edges) : n_(n), edges_(edges.begin(), edges.end()) {
    const int m = static_cast<int>(edges_.size());
    adjacency_.assign(n_, {});
    for (int e = 0; e < m; ++e) {
      adjacency_[edges_[e].first].push_back(e);
      adjacency_[edges_[e].second].push_back(e);
    }
  }

  // Runs the test. When `want_embedding` is set and the graph is planar the
  // clockwise dart order per node is available from rotations().
  bool run(bool want_embedding) {
    const int m = static_cast<int>(edges_.size());
    if (n_ > 2 && m > 3 * n_ - 6) return false;

    height_.assign(n_, -1);
    parent_edge_.assign(n_, -1);
    src_.assign(m, -1);
    dst_.assign(m, -1);
    lowpt_.assign(m, 0);
    lowpt2_.assign(m, 0);
    nesting_depth_.assign(m, 0);
    ref_.assign(m, -1);
    side_.assign(m, 1);
    lowpt_edge_.assign(m, -1);
    stack_bottom_.assign(m, 0);
    out_.assign(n_, {});

    for (int v = 0; v < n_; ++v) {
      if (height_[v] == -1) {
        height_[v] = 0;
        roots_.push_back(v);
        orient(v);
      }
    }
    for (int v = 0; v < n_; ++v) sort_out_edges(v);
    for (int r : roots_) {
      if (!test(r)) return false;
    }
    if (!want_embedding) return true;

    for (int e = 0; e < m; ++e) nesting_depth_[e] *= sign(e);
    for (int v = 0; v < n_; ++v) sort_out_edges(v);
    build_embedding();
    return true;
  }

  // Clockwise rotation (as dart ids) of each node.
  std::vector<std::vector<int>> rotations() const {
    std::vector<std::vector<int>> result(n_);
    for (int v = 0; v < n_; ++v) {
      if (first_[v] == -1) continue;
      int d = first_[v];
      do {
        result[v].push_back(d);
        d = cw_[d];
      } while (d != first_[v]);
    }
    return result;
  }

 private:
  struct Interval {
    int low = -1;
    int high = -1;
    bool empty() const { return low == -1 && high == -1; }
  };
  struct ConflictPair {
    Interval left;
    Interval right;
    void swap() { std::swap(left, right); }
  };

  bool conflicting(const Interval& i, int b) const {
    return !i.empty() && lowpt_[i.high] > lowpt_[b];
  }
  int lowest(const ConflictPair& p) const {
    if (p.left.empty()) return lowpt_[p.right.low];
    if (p.right.empty()) return lowpt_[p.left.low];
    return std::min(lowpt_[p.left.low], lowpt_[p.right.low]);
  }

  // Dart of edge e leaving node v.
  int dart_from(int e, int v) const { return edges_[e].first == v ? 2 * e : 2 * e + 1; }

  void sort_out_edges(int v) {
    std::stable_sort(out_[v].begin(), out_[v].end(),
                     [&](int a, int b) { return nesting_depth_[a] < nesting_depth_[b]; });
  }

  void orient(int root) {
    struct Frame {
      int v;
      std::size_t next;
    };
    std::vector<Frame> stack{{root, 0}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int v = f.v;
      if (f.next == adjacency_[v].size()) {
        stack.pop_back();
        if (!stack.empty()) finish_edge(parent_edge_[v], stack.back().v);
        continue;
      }
      const int e = adjacency_[v][f.next++];
      if (src_[e] != -1) continue;
      const int w = edges_[e].first == v ? edges_[e].second : edges_[e].first;
      src_[e] = v;
      dst_[e] = w;
      out_[v].push_back(e);
      lowpt_[e] = height_[v];
      lowpt2_[e] = height_[v];
      if (height_[w] == -1) {
        parent_edge_[w] = e;
        height_[w] = height_[v] + 1;
        stack.push_back({w, 0});
      } else {
        lowpt_[e] = height_[w];
        finish_edge(e, v);
      }
    }
  }

  // Nesting depth of e and lowpoint propagation to the parent edge of v.
  void finish_edge(int e, int v) {
    nesting_depth_[e] = 2 * lowpt_[e];
    if (lowpt2_[e] < height_[v]) nesting_depth_[e] += 1;
    const int pe = parent_edge_[v];
    if (pe == -1) return;
    if (lowpt_[e] < lowpt_[pe]) {
      lowpt2_[pe] = std::min(lowpt_[pe], lowpt2_[e]);
      lowpt_[pe] = lowpt_[e];
    } else if (lowpt_[e] > lowpt_[pe]) {
      lowpt2_[pe] = std::min(lowpt2_[pe], lowpt_[e]);
    } else {
      lowpt2_[pe] = std::min(lowpt2_[pe], lowpt2_[e]);
    }
  }

  bool test(int root) {
    struct Frame {
      int v;
      std::size_t next;
    };
    std::vector<Frame> stack{{root, 0}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int v = f.v;
      if (f.next == out_[v].size()) {
        stack.pop_back();
        const int e = parent_edge_[v];
        if (e != -1) {
          remove_back_edges(e);
          // Resume the parent: integrate the tree edge we just finished.
          if (!integrate(e, stack.back().v)) return false;
        }
        continue;
      }
      const int ei = out_[v][f.next++];
      stack_bottom_[ei] = static_cast<int>(s_.size());
      const int w = dst_[ei];
      if (ei == parent_edge_[w]) {
        stack.push_back({w, 0});
        continue;
      }
      lowpt_edge_[ei] = ei;
      s_.push_back(ConflictPair{Interval{}, Interval{ei, ei}});
      if (!integrate(ei, v)) return false;
    }
    return true;
  }

  bool integrate(int ei, int v) {
    if (lowpt_[ei] >= height_[v]) return true;
    const int e = parent_edge_[v];
    if (ei == out_[v].front()) {
      lowpt_edge_[e] = lowpt_edge_[ei];
      return true;
    }
    return add_constraints(ei, e);
  }

  bool add_constraints(int ei, int e) {
    ConflictPair p;
    do {
      ConflictPair q = s_.back();
      s_.pop_back();
      if (!q.left.empty()) q.swap();
      if (!q.left.empty()) return false;
      if (lowpt_[q.right.low] > lowpt_[e]) {
        if (p.right.empty()) {
          p.right = q.right;
        } else {
          ref_[p.right.low] = q.right.high;
        }
        p.right.low = q.right.low;
      } else {
        ref_[q.right.low] = lowpt_edge_[e];
      }
    } while (static_cast<int>(s_.size()) != stack_bottom_[ei]);

    while (!s_.empty() && (conflicting(s_.back().left, ei) || conflicting(s_.back().right, ei))) {
      ConflictPair q = s_.back();
      s_.pop_back();
      if (conflicting(q.right, ei)) q.swap();
      if (conflicting(q.right, ei)) return false;
      if (p.right.low != -1) ref_[p.right.low] = q.right.high;
      if (q.right.low != -1) p.right.low = q.right.low;
      if (p.left.empty()) {
        p.left = q.left;
      } else if (p.left.low != -1) {
        ref_[p.left.low] = q.left.high;
      }
      p.left.low = q.left.low;
    }
    if (!(p.left.empty() && p.right.empty())) s_.push_back(p);
    return true;
  }

  void remove_back_edges(int e) {
    const int u = src_[e];
    while (!s_.empty() && lowest(s_.back()) == height_[u]) {
      ConflictPair p = s_.back();
      s_.pop_back();
      if (p.left.low != -1) side_[p.left.low] = -1;
    }
    if (!s_.empty()) {
      ConflictPair p = s_.back();
      s_.pop_back();
      while (p.left.high != -1 && dst_[p.left.high] == u) p.left.high = ref_[p.left.high];
      if (p.left.high == -1 && p.left.low != -1) {
        ref_[p.left.low] = p.right.low;
        side_[p.left.low] = -1;
        p.left.low = -1;
      }
      while (p.right.high != -1 && dst_[p.right.high] == u) p.right.high = ref_[p.right.high];
      if (p.right.high == -1 && p.right.low != -1) {
        ref_[p.right.low] = p.left.low;
        side_[p.right.low] = -1;
        p.right.low = -1;
      }
      s_.push_back(p);
    }
    if (lowpt_[e] < height_[u] && !s_.empty()) {
      const int hl = s_.back().left.high;
      const int hr = s_.back().right.high;
      if (hl != -1 && (hr == -1 || lowpt_[hl] > lowpt_[hr])) {
        ref_[e] = hl;
      } else {
        ref_[e] = hr;
      }
    }
  }

  int sign(int e) {
    std::vector<int> chain;
    for (int x = e; ref_[x] != -1; x = ref_[x]) chain.push_back(x);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      side_[*it] *= side_[ref_[*it]];
      ref_[*it] = -1;
    }
    return side_[e];
  }

  // Cyclic doubly-linked dart lists.
  void insert_after(int ref, int d) {
    const int next = cw_[ref];
    cw_[ref] = d;
    ccw_[d] = ref;
    cw_[d] = next;
    ccw_[next] = d;
  }
  void insert_before(int ref, int d) { insert_after(ccw_[ref], d); }
  void add_to_empty(int v, int d) {
    first_[v] = d;
    cw_[d] = d;
    ccw_[d] = d;
  }

  void build_embedding() {
    const int m = static_cast<int>(edges_.size());
    cw_.assign(2 * m, -1);
    ccw_.assign(2 * m, -1);
    first_.assign(n_, -1);
    left_ref_.assign(n_, -1);
    right_ref_.assign(n_, -1);
    for (int v = 0; v < n_; ++v) {
      int prev = -1;
      for (int e : out_[v]) {
        const int d = dart_from(e, v);
        if (prev == -1) {
          add_to_empty(v, d);
        } else {
          insert_after(prev, d);
        }
        prev = d;
      }
    }
    struct Frame {
      int v;
      std::size_t next;
    };
    for (int root : roots_) {
      std::vector<Frame> stack{{root, 0}};
      while (!stack.empty()) {
        Frame& f = stack.back();
        const int v = f.v;
        if (f.next == out_[v].size()) {
          stack.pop_back();
          continue;
        }
        const int ei = out_[v][f.next++];
        const int w = dst_[ei];
        const int back = dart_from(ei, w);  // w -> v
        if (ei == parent_edge_[w]) {
          if (first_[w] == -1) {
            add_to_empty(w, back);
          } else {
            insert_before(first_[w], back);
            first_[w] = back;
          }
          left_ref_[v] = dart_from(ei, v);
          right_ref_[v] = dart_from(ei, v);
          stack.push_back({w, 0});
        } else if (side_[ei] == 1) {
          insert_after(right_ref_[w], back);
        } else {
          insert_before(left_ref_[w], back);
          left_ref_[w] = back;
        }
      }
    }
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> roots_;
  std::vector<int> height_, parent_edge_;
  std::vector<int> src_, dst_, lowpt_, lowpt2_, nesting_depth_, ref_, side_, lowpt_edge_,
      stack_bottom_;
  std::vector<std::vector<int>> out_;
  std::vector<ConflictPair> s_;
  std::vector<int> cw_, ccw_, first_, left_ref_, right_ref_;
};

}  // namespace detail

inline bool is_planar(int node_count, std::span<const Edge> edges) {
  return detail::LrPlanarity(node_count, edges).run(false);
}

inline bool is_planar(const Graph& g) { return is_planar(g.node_count(), g.edges()); }

// Best-effort Kuratowski witness: greedily drops edges while the rest stays
// non-planar. Skipped (empty result) above `max_edges` edges.
inline std::vector<Edge> kuratowski_witness(const Graph& g, int max_edges = 2000) {
  if (g.edge_count() > max_edges) return {};
  std::vector<Edge> kept(g.edges().begin(), g.edges().end());
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<Edge> trial = kept;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!is_planar(g.node_count(), trial)) {
      kept = std::move(trial);
    } else {
      ++i;
    }
  }
  return kept;
}

// Embeds a simple planar graph given as an edge list. Darts follow the edge
// list order. Throws NotPlanarError for non-planar input.
inline RotationSystem embed_edges(int node_count, std::span<const Edge> edges) {
  detail::LrPlanarity lr(node_count, edges);
  if (!lr.run(true)) throw NotPlanarError();
  return RotationSystem(node_count, std::vector<Edge>(edges.begin(), edges.end()), lr.rotations());
}

// Combinatorial planar embedding of a connected planar graph.
inline RotationSystem embed(const Graph& g) {
  if (!is_connected(g)) {
    throw ArgumentError("embed requires a connected graph; embed each component separately");
  }
  detail::LrPlanarity lr(g.node_count(), g.edges());
  if (!lr.run(true)) throw NotPlanarError(kuratowski_witness(g));
  return RotationSystem(g.node_count(), g.edges(), lr.rotations());
}

}  // namespace plancanon
