#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plancanon/code.hpp"
#include "plancanon/error.hpp"
#include "plancanon/planarity.hpp"
#include "plancanon/spqr.hpp"

namespace plancanon {

// A Weinberg walk: the visited nodes omega (one more than the number of
// traversed darts), their first-visit numbers kappa, and the darts used.
struct Walk {
  std::vector<int> omega;
  std::vector<int> kappa;
  std::vector<int> darts;
  int start_dart = -1;
  bool mirrored = false;
};

// First-visit numbering: the i-th distinct node gets number i (1-based),
// repeated occurrences reuse the number of the first one.
template <typename T>
std::vector<int> kappa_of(std::span<const T> omega) {
  if (omega.empty()) throw ArgumentError("kappa_of requires a non-empty sequence");
  std::unordered_map<T, int> first;
  std::vector<int> kappa;
  kappa.reserve(omega.size());
  for (const T& x : omega) {
    auto [it, inserted] = first.try_emplace(x, static_cast<int>(first.size()) + 1);
    kappa.push_back(it->second);
  }
  return kappa;
}

inline std::vector<int> kappa_of(const std::vector<int>& omega) {
  return kappa_of(std::span<const int>(omega));
}

namespace detail {

// Walk engine over a rotation system. Stamps make repeated walks from
// different start darts cost O(walk) each, with no reset.
class WeinbergEngine {
 public:
  explicit WeinbergEngine(const RotationSystem& rs)
      : rs_(rs), node_stamp_(rs.node_count(), 0), node_kappa_(rs.node_count(), 0), dart_stamp_(rs.dart_count(), 0) {}

  const RotationSystem& rotation_system() const { return rs_; }

  // Starts a walk; returns the first node. Use next() for further darts.
  void begin(int start, bool mirrored) {
    if (start < 0 || start >= rs_.dart_count()) throw ArgumentError("start dart out of range");
    ++gen_;
    mirrored_ = mirrored;
    next_kappa_ = 1;
    used_ = 0;
    current_ = -1;
    pending_ = start;
    const int s = rs_.tail(start);
    node_stamp_[s] = gen_;
    node_kappa_[s] = next_kappa_++;
  }

  // Traverses the next dart and returns it, or -1 when the walk has ended.
  // After a dart is returned, head() and head_kappa() describe the arrival.
  int next() {
    int d = pending_;
    if (d == -1) return -1;
    dart_stamp_[d] = gen_;
    ++used_;
    current_ = d;
    const int w = rs_.head(d);
    arrived_new_ = node_stamp_[w] != gen_;
    if (arrived_new_) {
      node_stamp_[w] = gen_;
      node_kappa_[w] = next_kappa_++;
    }
    pending_ = choose_exit(d, arrived_new_);
    return d;
  }

  int tail_kappa_of_start(int start) const { return node_kappa_[rs_.tail(start)]; }
  int head() const { return rs_.head(current_); }
  int head_kappa() const { return node_kappa_[rs_.head(current_)]; }
  int used() const { return used_; }
  bool complete() const { return used_ == rs_.dart_count(); }
  bool traversed(int d) const { return dart_stamp_[d] == gen_; }

 private:
  int rot_next(int d) const { return mirrored_ ? rs_.pred(d) : rs_.succ(d); }

  int choose_exit(int d, bool arrived_new) const {
    const int r = reverse_dart(d);
    if (arrived_new) {
      const int x = rot_next(r);
      return dart_stamp_[x] == gen_ ? -1 : x;
    }
    if (dart_stamp_[r] != gen_) return r;
    for (int x = rot_next(r); x != r; x = rot_next(x)) {
      if (dart_stamp_[x] != gen_) return x;
    }
    return -1;
  }

  const RotationSystem& rs_;
  std::vector<std::uint32_t> node_stamp_;
  std::vector<int> node_kappa_;
  std::vector<std::uint32_t> dart_stamp_;
  std::uint32_t gen_ = 0;
  bool mirrored_ = false;
  bool arrived_new_ = false;
  int next_kappa_ = 1;
  int used_ = 0;
  int current_ = -1;
  int pending_ = -1;
};

}  // namespace detail

// Weinberg's walk from `start`: a new node is left through the rotation
// successor of the arrival dart's reverse; an old node is left back along
// the reverse if that is unused, otherwise through the first unused dart
// after the reverse. Throws InvariantError if the walk stops before every
// dart has been used.
inline Walk weinberg_walk(const RotationSystem& rs, int start, bool mirrored = false) {
  if (start < 0 || start >= rs.dart_count()) throw ArgumentError("start dart " + std::to_string(start) + " is not a dart");
  detail::WeinbergEngine engine(rs);
  engine.begin(start, mirrored);
  Walk walk;
  walk.start_dart = start;
  walk.mirrored = mirrored;
  walk.omega.push_back(rs.tail(start));
  walk.kappa.push_back(1);
  for (int d = engine.next(); d != -1; d = engine.next()) {
    walk.darts.push_back(d);
    walk.omega.push_back(engine.head());
    walk.kappa.push_back(engine.head_kappa());
  }
  if (!engine.complete()) {
    throw InvariantError("Weinberg walk stalled after " + std::to_string(engine.used()) + " of " +
                         std::to_string(rs.dart_count()) + " darts");
  }
  return walk;
}

// ---------------------------------------------------------------------------
// Triconnected skeleton codes
// ---------------------------------------------------------------------------

// Node labels indexed by node id; only ids present in the coded skeleton
// need valid entries.
using LabelTable = std::vector<Code>;

inline constexpr int kTagP = 0;
inline constexpr int kTagQ = 1;
inline constexpr int kTagR = 2;
inline constexpr int kTagS = 3;
inline constexpr int kRealEdge = 0;
inline constexpr int kVirtualEdge = 1;

// Embedding of an R skeleton over local ids 0..k-1. Skeleton edge i owns
// darts 2i (edges[i].u -> edges[i].v) and 2i+1.
struct SkeletonEmbedding {
  std::vector<int> local_to_node;
  RotationSystem rotation;
};

inline SkeletonEmbedding embed_skeleton(const Skeleton& sk) {
  SkeletonEmbedding se;
  se.local_to_node = sk.nodes;
  auto local = [&](int v) {
    return static_cast<int>(std::lower_bound(sk.nodes.begin(), sk.nodes.end(), v) - sk.nodes.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(sk.edges.size());
  for (const auto& e : sk.edges) edges.emplace_back(local(e.u), local(e.v));
  se.rotation = embed_edges(static_cast<int>(sk.nodes.size()), edges);
  return se;
}

namespace detail {

// Token sink comparing against an optional bound while writing. Once the
// output is known to be greater than the bound, writing stops.
class BoundedSink {
 public:
  enum class State { kEqual, kLess, kGreater };

  BoundedSink(Code& out, const Code* bound) : out_(out.tokens()), bound_(bound) { out_.clear(); }

  bool push(Code::Token t) {
    if (state_ == State::kEqual && bound_ != nullptr) {
      const auto& b = bound_->tokens();
      if (out_.size() >= b.size() || t > b[out_.size()]) {
        state_ = State::kGreater;
        return false;
      }
      if (t < b[out_.size()]) state_ = State::kLess;
    }
    out_.push_back(t);
    return true;
  }
  bool push(const Code& c) {
    for (auto t : c.tokens()) {
      if (!push(t)) return false;
    }
    return true;
  }
  bool aborted() const { return state_ == State::kGreater; }

  // Final verdict relative to the bound (kLess when there is no bound).
  State finish() const {
    if (bound_ == nullptr) return State::kLess;
    if (state_ == State::kEqual && out_.size() < bound_->tokens().size()) return State::kLess;
    return state_;
  }

 private:
  std::vector<Code::Token>& out_;
  const Code* bound_;
  State state_ = State::kEqual;
};

// Emits the R-node code of one walk candidate:
//   "(" 2 "," item ("," item)* ")"
//   item_i = "(" kappa_i "," label(omega_i) "," kind(step i) ")"; the last
//   item has no step kind.
// Returns the sink verdict; on kGreater the output is truncated.
inline BoundedSink::State emit_walk_code(WeinbergEngine& engine, const SkeletonEmbedding& se,
                                         const Skeleton& sk, const LabelTable& labels, int start,
                                         bool mirrored, const Code* bound, Code& out, Walk* trace) {
  BoundedSink sink(out, bound);
  const auto& rs = se.rotation;
  engine.begin(start, mirrored);
  if (trace) {
    *trace = Walk{};
    trace->start_dart = start;
    trace->mirrored = mirrored;
    trace->omega.push_back(se.local_to_node[rs.tail(start)]);
    trace->kappa.push_back(1);
  }
  auto emit_item_head = [&](int kappa, int local_node) {
    return sink.push(Code::kOpen) && sink.push(kappa) && sink.push(Code::kComma) &&
           sink.push(labels[se.local_to_node[local_node]]);
  };
  if (!(sink.push(Code::kOpen) && sink.push(kTagR) && sink.push(Code::kComma))) return sink.finish();
  if (!emit_item_head(1, rs.tail(start))) return sink.finish();
  for (int d = engine.next(); d != -1; d = engine.next()) {
    const int kind = sk.edges[dart_edge(d)].is_virtual ? kVirtualEdge : kRealEdge;
    if (!(sink.push(Code::kComma) && sink.push(kind) && sink.push(Code::kClose) && sink.push(Code::kComma))) {
      return sink.finish();
    }
    if (!emit_item_head(engine.head_kappa(), engine.head())) return sink.finish();
    if (trace) {
      trace->darts.push_back(d);
      trace->omega.push_back(se.local_to_node[engine.head()]);
      trace->kappa.push_back(engine.head_kappa());
    }
  }
  if (!engine.complete()) {
    throw InvariantError("Weinberg walk stalled after " + std::to_string(engine.used()) + " of " +
                         std::to_string(rs.dart_count()) + " darts");
  }
  if (!(sink.push(Code::kClose) && sink.push(Code::kClose))) return sink.finish();
  return sink.finish();
}

// Independent check that a simple graph is triconnected (>= 4 nodes and no
// node pair whose removal disconnects it). O(n * (n + m)).
inline bool is_triconnected(int n, const std::vector<Edge>& edges) {
  if (n < 4) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v) return false;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
  }
  for (int a = 0; a < n; ++a) {
    std::vector<int> rest;
    for (int v = 0; v < n; ++v) {
      if (v != a) rest.push_back(v);
    }
    std::vector<Edge> sub;
    std::vector<int> idx(n, -1);
    for (int i = 0; i < n - 1; ++i) idx[rest[i]] = i;
    for (auto [u, v] : edges) {
      if (u != a && v != a) sub.emplace_back(idx[u], idx[v]);
    }
    Graph g(n - 1, sub);
    if (!is_connected(g)) return false;
    if (block_cut_tree(g).blocks.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

// Minimal walk code of a triconnected skeleton over all start darts and
// both mirror images, together with the minimizing walk (ties go to the
// smallest (start dart, mirrored) pair; darts are numbered 2i / 2i+1 for
// skeleton edge i).
inline std::pair<Code, Walk> tri_code(const Skeleton& sk, const LabelMap& labels) {
  std::vector<int> local_nodes = sk.nodes;
  std::vector<Edge> local_edges;
  for (const auto& e : sk.edges) {
    auto lu = std::lower_bound(local_nodes.begin(), local_nodes.end(), e.u) - local_nodes.begin();
    auto lv = std::lower_bound(local_nodes.begin(), local_nodes.end(), e.v) - local_nodes.begin();
    local_edges.emplace_back(static_cast<int>(lu), static_cast<int>(lv));
  }
  if (!detail::is_triconnected(static_cast<int>(local_nodes.size()), local_edges)) {
    throw ArgumentError("tri_code requires a simple triconnected skeleton");
  }
  int max_id = 0;
  for (int v : sk.nodes) max_id = std::max(max_id, v);
  LabelTable table(max_id + 1);
  for (int v : sk.nodes) {
    auto it = labels.find(v);
    if (it == labels.end()) throw ArgumentError("label map is missing skeleton node " + std::to_string(v));
    table[v] = it->second;
  }
  SkeletonEmbedding se = embed_skeleton(sk);
  detail::WeinbergEngine engine(se.rotation);
  Code best, scratch;
  Walk best_walk;
  bool have = false;
  for (int mirrored = 0; mirrored < 2; ++mirrored) {
    for (int d = 0; d < se.rotation.dart_count(); ++d) {
      Walk trace;
      auto verdict = detail::emit_walk_code(engine, se, sk, table, d, mirrored != 0, have ? &best : nullptr,
                                            scratch, &trace);
      if (!have || verdict == detail::BoundedSink::State::kLess) {
        best = scratch;
        have = true;
        best_walk = std::move(trace);
      } else if (verdict == detail::BoundedSink::State::kEqual) {
        if (std::make_pair(d, mirrored != 0) < std::make_pair(best_walk.start_dart, best_walk.mirrored)) {
          best_walk = std::move(trace);
        }
      }
    }
  }
  return {std::move(best), std::move(best_walk)};
}

}  // namespace plancanon
