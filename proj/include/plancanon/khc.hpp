#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "plancanon/blockcut.hpp"
#include "plancanon/code.hpp"
#include "plancanon/error.hpp"
#include "plancanon/graph.hpp"
#include "plancanon/planarity.hpp"
#include "plancanon/spqr.hpp"
#include "plancanon/weinberg.hpp"

namespace plancanon {

// Cycle of an S skeleton as a closed sequence: step i leaves nodes[i] along
// skeleton edge edges[i] and arrives at nodes[i+1] (indices mod length).
// dirs[i] is 0 when that step runs edges[i].u -> edges[i].v.
struct CycleOrder {
  std::vector<int> nodes;
  std::vector<int> edges;
  std::vector<int> dirs;
};

inline CycleOrder cycle_order(const Skeleton& sk) {
  const std::size_t len = sk.edges.size();
  if (len < 3 || sk.nodes.size() != len) throw ArgumentError("S skeleton must be a cycle of length >= 3");
  auto local = [&](int v) {
    auto it = std::lower_bound(sk.nodes.begin(), sk.nodes.end(), v);
    if (it == sk.nodes.end() || *it != v) throw ArgumentError("skeleton edge endpoint is not a skeleton node");
    return static_cast<int>(it - sk.nodes.begin());
  };
  std::vector<std::array<int, 2>> inc(len, {-1, -1});
  for (std::size_t e = 0; e < len; ++e) {
    for (int end : {sk.edges[e].u, sk.edges[e].v}) {
      auto& slot = inc[local(end)];
      if (slot[0] == -1) {
        slot[0] = static_cast<int>(e);
      } else if (slot[1] == -1) {
        slot[1] = static_cast<int>(e);
      } else {
        throw ArgumentError("S skeleton must be a cycle");
      }
    }
  }
  CycleOrder c;
  int node = sk.edges[0].u;
  int edge = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const auto& e = sk.edges[edge];
    if (e.u == e.v) throw ArgumentError("S skeleton must be a cycle");
    c.nodes.push_back(node);
    c.edges.push_back(edge);
    c.dirs.push_back(e.u == node ? 0 : 1);
    node = e.u == node ? e.v : e.u;
    const auto& slot = inc[local(node)];
    if (slot[1] == -1) throw ArgumentError("S skeleton must be a cycle");
    edge = slot[0] == edge ? slot[1] : slot[0];
  }
  if (node != c.nodes[0] || edge != 0) throw ArgumentError("S skeleton must be a single cycle");
  return c;
}

// Canonical data of a coded SPQR tree: the chosen root, the canonical walk
// of every S and R node (empty for P and Q), and theta per tree edge.
struct SpqrTrace {
  int root = -1;
  std::vector<Walk> walks;
  std::vector<int> theta;
};

namespace detail {

inline int least_rotation(const std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  int i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const int a = s[(i + k) % n], b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

// Smallest rotation period of s.
inline int rotation_period(const std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  std::vector<int> pi(n, 0);
  for (int i = 1; i < n; ++i) {
    int k = pi[i - 1];
    while (k > 0 && s[i] != s[k]) k = pi[k - 1];
    if (s[i] == s[k]) ++k;
    pi[i] = k;
  }
  const int p = n - pi[n - 1];
  return n % p == 0 ? p : n;
}

// Bottom-up coder of one SPQR tree. Every non-root node is coded twice,
// once per orientation of its parent virtual edge, so a parent can glue a
// child in the direction its own canonical order runs along that edge.
class SpqrCoder {
 public:
  struct Attach {
    int edge;
    int theta;
    int dir;
  };
  struct Cand {
    int a = 0;
    int b = 0;
  };

  SpqrCoder(const SpqrTree& tree, const std::vector<SkeletonEmbedding>* embeddings, const LabelTable& labels)
      : t_(tree), labels_(labels) {
    const int nn = static_cast<int>(t_.nodes.size());
    if (nn == 0) throw ArgumentError("empty SPQR tree");
    if (embeddings != nullptr) {
      emb_ = embeddings;
    } else {
      owned_emb_.resize(nn);
      for (int x = 0; x < nn; ++x) {
        if (t_.nodes[x].kind == SpqrKind::kR) owned_emb_[x] = embed_skeleton(t_.nodes[x].skeleton);
      }
      emb_ = &owned_emb_;
    }
    cycles_.resize(nn);
    for (int x = 0; x < nn; ++x) {
      if (t_.nodes[x].kind == SpqrKind::kS) cycles_[x] = cycle_order(t_.nodes[x].skeleton);
    }
  }

  // Code over the canonical root (the smaller code when there are two
  // centroids).
  Code code(SpqrTrace* trace) {
    std::vector<int> roots = t_.centroids;
    if (roots.empty()) roots = {0};
    Code best;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      SpqrTrace local;
      Code c = code_rooted(roots[i], trace ? &local : nullptr);
      if (i == 0 || c < best) {
        best = std::move(c);
        if (trace) *trace = std::move(local);
      }
    }
    return best;
  }

  Code code_rooted(int root, SpqrTrace* trace) {
    const int nn = static_cast<int>(t_.nodes.size());
    parent_edge_.assign(nn, -1);
    codes_.assign(nn, {});
    choice_.assign(nn, {});
    rank_of_.assign(t_.tree_edges.size(), {-1, -1});

    std::vector<int> order{root};
    std::vector<char> seen(nn, 0);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int x = order[i];
      const auto& sk = t_.nodes[x].skeleton;
      for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e) {
        const int te = sk.edges[e].tree_edge;
        if (te < 0) continue;
        const int y = t_.across(te, x);
        if (seen[y]) continue;
        seen[y] = 1;
        parent_edge_[y] = t_.partner_edge(te, x);
        order.push_back(y);
      }
    }
    if (static_cast<int>(order.size()) != nn) throw InvariantError("SPQR tree is not connected");

    for (int i = nn - 1; i > 0; --i) {
      const int x = order[i];
      for (int o = 0; o < 2; ++o) {
        std::vector<Cand> cands = oriented_candidates(x, o);
        choice_[x][o] = pick(x, cands, codes_[x][o]);
      }
      release_children(x);
    }
    Code result;
    Cand rc = pick(root, root_candidates(root), result);
    release_children(root);
    if (trace) fill_trace(root, rc, order, *trace);
    engine_.reset();
    engine_node_ = -1;
    return result;
  }

  // Canonical order data of a single node used as root (no children coded).
  std::pair<Code, Cand> root_own(int x) {
    parent_edge_.assign(t_.nodes.size(), -1);
    std::vector<Cand> cands = root_candidates(x);
    Code best, own;
    Cand chosen = cands.front();
    for (std::size_t i = 0; i < cands.size(); ++i) {
      own_code(x, cands[i], nullptr, own, nullptr);
      if (i == 0 || own < best) {
        best = own;
        chosen = cands[i];
      }
    }
    return {best, chosen};
  }

  std::vector<Attach> attaches(int x, Cand c, Walk* walk) { return attaches_impl(x, c, walk, true); }

 private:
  // --- own codes -----------------------------------------------------------

  BoundedSink::State own_code(int x, Cand c, const Code* bound, Code& out, Walk* walk) {
    const auto& node = t_.nodes[x];
    const auto& sk = node.skeleton;
    auto kind_of = [&](int e) { return sk.edges[e].is_virtual ? kVirtualEdge : kRealEdge; };
    switch (node.kind) {
      case SpqrKind::kR:
        return emit_walk_code(engine_for(x), (*emb_)[x], sk, labels_, c.a, c.b != 0, bound, out, walk);
      case SpqrKind::kS: {
        const auto& cyc = cycles_[x];
        const int len = static_cast<int>(cyc.nodes.size());
        BoundedSink sink(out, bound);
        if (walk) *walk = Walk{};
        sink.push(Code::kOpen) && sink.push(kTagS);
        for (int p = 0; p < len && !sink.aborted(); ++p) {
          const auto [v, e, dir] = s_step(cyc, c, p);
          (void)dir;
          sink.push(Code::kComma) && sink.push(Code::kOpen) && sink.push(labels_[v]) && sink.push(Code::kComma) &&
              sink.push(kind_of(e)) && sink.push(Code::kClose);
          if (walk) {
            walk->omega.push_back(v);
            walk->kappa.push_back(p + 1);
          }
        }
        sink.push(Code::kClose);
        if (walk) {
          walk->omega.push_back(walk->omega.front());
          walk->kappa.push_back(1);
          walk->start_dart = c.a;
          walk->mirrored = c.b != 0;
        }
        return sink.finish();
      }
      case SpqrKind::kP: {
        BoundedSink sink(out, bound);
        const int s = c.a;
        const int tt = s == sk.nodes[0] ? sk.nodes[1] : sk.nodes[0];
        std::vector<int> kinds;
        for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e) kinds.push_back(kind_of(e));
        std::sort(kinds.begin(), kinds.end());
        sink.push(Code::kOpen) && sink.push(kTagP) && sink.push(Code::kComma) && sink.push(labels_[s]) &&
            sink.push(Code::kComma) && sink.push(labels_[tt]) && sink.push(Code::kComma) &&
            sink.push(static_cast<int>(kinds.size())) && sink.push(Code::kComma) && sink.push(Code::kOpen);
        for (std::size_t i = 0; i < kinds.size() && !sink.aborted(); ++i) {
          if (i) sink.push(Code::kComma);
          sink.push(kinds[i]);
        }
        sink.push(Code::kClose) && sink.push(Code::kClose);
        if (walk) *walk = Walk{};
        return sink.finish();
      }
      case SpqrKind::kQ: {
        BoundedSink sink(out, bound);
        const Code* la = &labels_[sk.edges[0].u];
        const Code* lb = &labels_[sk.edges[0].v];
        if (*lb < *la) std::swap(la, lb);
        sink.push(Code::kOpen) && sink.push(kTagQ) && sink.push(Code::kComma) && sink.push(*la) &&
            sink.push(Code::kComma) && sink.push(*lb) && sink.push(Code::kClose);
        if (walk) *walk = Walk{};
        return sink.finish();
      }
    }
    throw InvariantError("unknown SPQR node kind");
  }

  // Step p of S candidate c = (start position, backwards flag):
  // (node left, edge used, direction relative to the stored edge).
  static std::array<int, 3> s_step(const CycleOrder& cyc, Cand c, int p) {
    const int len = static_cast<int>(cyc.nodes.size());
    if (c.b == 0) {
      const int i = (c.a + p) % len;
      return {cyc.nodes[i], cyc.edges[i], cyc.dirs[i]};
    }
    const int i = ((c.a - p) % len + len) % len;
    const int j = (i - 1 + len) % len;
    return {cyc.nodes[i], cyc.edges[j], 1 - cyc.dirs[j]};
  }

  WeinbergEngine& engine_for(int x) {
    if (engine_node_ != x || !engine_) {
      engine_ = std::make_unique<WeinbergEngine>((*emb_)[x].rotation);
      engine_node_ = x;
    }
    return *engine_;
  }

  // --- candidates ------------------------------------------------------------

  std::vector<Cand> oriented_candidates(int x, int o) {
    const auto& node = t_.nodes[x];
    const auto& sk = node.skeleton;
    const int pe = parent_edge_[x];
    switch (node.kind) {
      case SpqrKind::kR:
        return {Cand{2 * pe + o, 0}, Cand{2 * pe + o, 1}};
      case SpqrKind::kS: {
        const auto& cyc = cycles_[x];
        const int len = static_cast<int>(cyc.nodes.size());
        const int q = static_cast<int>(std::find(cyc.edges.begin(), cyc.edges.end(), pe) - cyc.edges.begin());
        if (o == cyc.dirs[q]) return {Cand{q, 0}};
        return {Cand{(q + 1) % len, 1}};
      }
      case SpqrKind::kP:
        return {Cand{o == 0 ? sk.edges[pe].u : sk.edges[pe].v, 0}};
      case SpqrKind::kQ:
        break;
    }
    throw InvariantError("Q node cannot have a parent in an SPQR tree");
  }

  std::vector<Cand> root_candidates(int x) {
    const auto& node = t_.nodes[x];
    const auto& sk = node.skeleton;
    switch (node.kind) {
      case SpqrKind::kR: {
        const int darts = 2 * static_cast<int>(sk.edges.size());
        std::vector<Cand> ties;
        Code best, scratch;
        for (int d = 0; d < darts; ++d) {
          for (int m = 0; m < 2; ++m) {
            auto v = own_code(x, Cand{d, m}, ties.empty() ? nullptr : &best, scratch, nullptr);
            if (ties.empty() || v == BoundedSink::State::kLess) {
              std::swap(best, scratch);
              ties.assign(1, Cand{d, m});
            } else if (v == BoundedSink::State::kEqual) {
              ties.push_back(Cand{d, m});
            }
          }
        }
        return ties;
      }
      case SpqrKind::kS:
        return s_root_candidates(x);
      case SpqrKind::kP:
        return {Cand{sk.nodes[0], 0}, Cand{sk.nodes[1], 0}};
      case SpqrKind::kQ:
        return {Cand{0, 0}};
    }
    throw InvariantError("unknown SPQR node kind");
  }

  // All minimal rotations in both directions via least rotation + period.
  std::vector<Cand> s_root_candidates(int x) {
    const auto& sk = t_.nodes[x].skeleton;
    const auto& cyc = cycles_[x];
    const int len = static_cast<int>(cyc.nodes.size());
    std::vector<int> by_label(cyc.nodes.begin(), cyc.nodes.end());
    std::sort(by_label.begin(), by_label.end(), [&](int a, int b) { return labels_[a] < labels_[b]; });
    std::map<int, int> label_rank;
    int r = 0;
    for (std::size_t i = 0; i < by_label.size(); ++i) {
      if (i && labels_[by_label[i - 1]] < labels_[by_label[i]]) ++r;
      label_rank[by_label[i]] = r;
    }
    auto key = [&](int v, int e) { return 2 * label_rank[v] + (sk.edges[e].is_virtual ? 1 : 0); };
    std::vector<int> fwd(len), bwd(len);
    for (int p = 0; p < len; ++p) {
      const auto f = s_step(cyc, Cand{0, 0}, p);
      const auto b = s_step(cyc, Cand{0, 1}, p);
      fwd[p] = key(f[0], f[1]);
      bwd[p] = key(b[0], b[1]);
    }
    const int kf = least_rotation(fwd), kb = least_rotation(bwd);
    int cmp = 0;
    for (int p = 0; p < len && cmp == 0; ++p) {
      const int a = fwd[(kf + p) % len], b = bwd[(kb + p) % len];
      cmp = a < b ? -1 : (a > b ? 1 : 0);
    }
    std::vector<Cand> out;
    if (cmp <= 0) {
      const int per = rotation_period(fwd);
      for (int s = kf % per; s < len; s += per) out.push_back(Cand{s, 0});
    }
    if (cmp >= 0) {
      const int per = rotation_period(bwd);
      // Backward candidate from start s reads bwd rotated by (-s) mod len.
      for (int k = kb % per; k < len; k += per) out.push_back(Cand{(len - k) % len, 1});
    }
    return out;
  }

  // --- attachments and children ----------------------------------------------

  std::vector<Attach> attaches_impl(int x, Cand c, Walk* walk, bool include_parent) {
    const auto& node = t_.nodes[x];
    const auto& sk = node.skeleton;
    const int pe = include_parent ? -1 : parent_edge_[x];
    std::vector<Attach> out;
    switch (node.kind) {
      case SpqrKind::kR: {
        Walk local;
        Walk* w = walk ? walk : &local;
        Code scratch;
        own_code(x, c, nullptr, scratch, w);
        std::vector<char> seen(sk.edges.size(), 0);
        for (std::size_t i = 0; i < w->darts.size(); ++i) {
          const int e = dart_edge(w->darts[i]);
          if (seen[e]) continue;
          seen[e] = 1;
          if (sk.edges[e].is_virtual && e != pe) out.push_back(Attach{e, static_cast<int>(i) + 1, w->darts[i] & 1});
        }
        break;
      }
      case SpqrKind::kS: {
        const auto& cyc = cycles_[x];
        for (int p = 0; p < static_cast<int>(cyc.nodes.size()); ++p) {
          const auto [v, e, dir] = s_step(cyc, c, p);
          (void)v;
          if (sk.edges[e].is_virtual && e != pe) out.push_back(Attach{e, p + 1, dir});
        }
        if (walk) {
          Code scratch;
          own_code(x, c, nullptr, scratch, walk);
        }
        break;
      }
      case SpqrKind::kP:
        for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e) {
          if (sk.edges[e].is_virtual && e != pe) out.push_back(Attach{e, 0, sk.edges[e].u == c.a ? 0 : 1});
        }
        if (walk) *walk = Walk{};
        break;
      case SpqrKind::kQ:
        if (walk) *walk = Walk{};
        break;
    }
    return out;
  }

  // Child node and orientation reached through attachment `a` of x.
  std::pair<int, int> child_of(int x, const Attach& a) const {
    const auto& se = t_.nodes[x].skeleton.edges[a.edge];
    const int te = se.tree_edge;
    const int y = t_.across(te, x);
    const int ce = t_.partner_edge(te, x);
    const int from = a.dir == 0 ? se.u : se.v;
    return {y, t_.nodes[y].skeleton.edges[ce].u == from ? 0 : 1};
  }

  // Ranks of the children's codes (both orientations) of x, by tree edge.
  void rank_children(int x) {
    const auto& sk = t_.nodes[x].skeleton;
    std::vector<std::pair<const Code*, std::pair<int, int>>> all;
    for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e) {
      const int te = sk.edges[e].tree_edge;
      if (te < 0 || e == parent_edge_[x]) continue;
      const int y = t_.across(te, x);
      for (int o = 0; o < 2; ++o) all.push_back({&codes_[y][o], {te, o}});
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });
    int r = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i && *all[i - 1].first < *all[i].first) ++r;
      rank_of_[all[i].second.first][all[i].second.second] = r;
    }
  }

  struct Entry {
    int rank;
    int theta;
    int child;
    int orient;
  };

  std::vector<Entry> entries_for(int x, Cand c) {
    std::vector<Entry> out;
    for (const auto& a : attaches_impl(x, c, nullptr, false)) {
      auto [y, oc] = child_of(x, a);
      const int te = t_.nodes[x].skeleton.edges[a.edge].tree_edge;
      out.push_back(Entry{rank_of_[te][oc], a.theta, y, oc});
    }
    std::sort(out.begin(), out.end(),
              [](const Entry& a, const Entry& b) { return std::tie(a.rank, a.theta) < std::tie(b.rank, b.theta); });
    return out;
  }

  // Same order as comparing the emitted "(theta,code)" lists token-wise.
  static bool entries_less(const std::vector<Entry>& a, const std::vector<Entry>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].theta != b[i].theta) return a[i].theta < b[i].theta;
      if (a[i].rank != b[i].rank) return a[i].rank < b[i].rank;
    }
    return a.size() < b.size();
  }

  // Chooses the candidate with the smallest full code and writes that code.
  Cand pick(int x, const std::vector<Cand>& cands, Code& out) {
    // Minimal own code first.
    std::vector<Cand> ties;
    Code best_own, scratch;
    for (const Cand& c : cands) {
      auto v = own_code(x, c, ties.empty() ? nullptr : &best_own, scratch, nullptr);
      if (ties.empty() || v == BoundedSink::State::kLess) {
        std::swap(best_own, scratch);
        ties.assign(1, c);
      } else if (v == BoundedSink::State::kEqual) {
        ties.push_back(c);
      }
    }
    rank_children(x);
    Cand best = ties.front();
    std::vector<Entry> best_entries = entries_for(x, best);
    if (!best_entries.empty()) {
      for (std::size_t i = 1; i < ties.size(); ++i) {
        std::vector<Entry> e = entries_for(x, ties[i]);
        if (entries_less(e, best_entries)) {
          best = ties[i];
          best_entries = std::move(e);
        }
      }
    }
    std::size_t total = best_own.size() + 2;
    for (const auto& e : best_entries) total += codes_[e.child][e.orient].size() + 5;
    out = Code{};
    out.tokens().reserve(total);
    out.open().append(best_own);
    for (const auto& e : best_entries) {
      out.comma().open().integer(e.theta).comma().append(codes_[e.child][e.orient]).close();
    }
    out.close();
    return best;
  }

  void release_children(int x) {
    const auto& sk = t_.nodes[x].skeleton;
    for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e) {
      const int te = sk.edges[e].tree_edge;
      if (te < 0 || e == parent_edge_[x]) continue;
      const int y = t_.across(te, x);
      codes_[y] = {};
    }
  }

  void fill_trace(int root, Cand rc, const std::vector<int>& order, SpqrTrace& trace) {
    trace = SpqrTrace{};
    trace.root = root;
    trace.walks.assign(t_.nodes.size(), {});
    trace.theta.assign(t_.tree_edges.size(), 0);
    std::vector<Cand> chosen(t_.nodes.size());
    chosen[root] = rc;
    for (int x : order) {
      for (const auto& a : attaches_impl(x, chosen[x], &trace.walks[x], false)) {
        auto [y, oc] = child_of(x, a);
        trace.theta[t_.nodes[x].skeleton.edges[a.edge].tree_edge] = a.theta;
        chosen[y] = choice_[y][oc];
      }
    }
  }

  const SpqrTree& t_;
  const LabelTable& labels_;
  const std::vector<SkeletonEmbedding>* emb_ = nullptr;
  std::vector<SkeletonEmbedding> owned_emb_;
  std::vector<CycleOrder> cycles_;
  std::vector<int> parent_edge_;
  std::vector<std::array<Code, 2>> codes_;
  std::vector<std::array<Cand, 2>> choice_;
  std::vector<std::array<int, 2>> rank_of_;
  std::unique_ptr<WeinbergEngine> engine_;
  int engine_node_ = -1;
};

inline LabelTable label_table(const std::vector<int>& nodes, const LabelMap& labels) {
  int max_id = 0;
  for (int v : nodes) max_id = std::max(max_id, v);
  LabelTable table(static_cast<std::size_t>(max_id) + 1);
  for (int v : nodes) {
    auto it = labels.find(v);
    if (it == labels.end()) throw ArgumentError("label map is missing node " + std::to_string(v));
    table[v] = it->second;
  }
  return table;
}

inline SpqrTree single_node_tree(const Skeleton& sk, SpqrKind kind) {
  SpqrTree t;
  t.nodes.push_back(SpqrNode{0, kind, sk});
  t.centroids = {0};
  t.block_node_count = static_cast<int>(sk.nodes.size());
  for (auto& e : t.nodes[0].skeleton.edges) e.tree_edge = -1;
  return t;
}

}  // namespace detail

// Minimal (label, edge kind) sequence of a cycle over both directions and
// all rotations.
inline Code s_code(const Skeleton& cycle, const LabelMap& labels) {
  cycle_order(cycle);
  LabelTable table = detail::label_table(cycle.nodes, labels);
  SpqrTree t = detail::single_node_tree(cycle, SpqrKind::kS);
  return detail::SpqrCoder(t, nullptr, table).root_own(0).first;
}

// Endpoint labels in the smaller order, multiplicity, sorted edge kinds.
inline Code p_code(const Skeleton& dipole, const LabelMap& labels) {
  if (dipole.nodes.size() != 2 || dipole.edges.size() < 3) throw ArgumentError("P skeleton must be a dipole");
  for (const auto& e : dipole.edges) {
    if (!((e.u == dipole.nodes[0] && e.v == dipole.nodes[1]) || (e.u == dipole.nodes[1] && e.v == dipole.nodes[0]))) {
      throw ArgumentError("P skeleton must be a dipole");
    }
  }
  LabelTable table = detail::label_table(dipole.nodes, labels);
  SpqrTree t = detail::single_node_tree(dipole, SpqrKind::kP);
  return detail::SpqrCoder(t, nullptr, table).root_own(0).first;
}

// Sorted endpoint labels of a single edge.
inline Code q_code(const Skeleton& edge, const LabelMap& labels) {
  if (edge.edges.size() != 1 || edge.nodes.size() != 2 || edge.edges[0].u == edge.edges[0].v) {
    throw ArgumentError("Q skeleton must be a single edge");
  }
  LabelTable table = detail::label_table(edge.nodes, labels);
  SpqrTree t = detail::single_node_tree(edge, SpqrKind::kQ);
  return detail::SpqrCoder(t, nullptr, table).root_own(0).first;
}

// Position of virtual edge `edge` in the canonical order of `parent` coded
// as a root: 1-based cycle position for S, 1-based step of the first
// traversal in the minimizing walk for R, 0 for P and Q.
inline int theta(const SpqrNode& parent, int edge, const LabelMap& labels) {
  const auto& sk = parent.skeleton;
  if (edge < 0 || edge >= static_cast<int>(sk.edges.size())) throw ArgumentError("edge is not in the parent skeleton");
  if (!sk.edges[edge].is_virtual) throw ArgumentError("theta is defined for virtual edges only");
  if (parent.kind == SpqrKind::kP || parent.kind == SpqrKind::kQ) return 0;
  LabelTable table = detail::label_table(sk.nodes, labels);
  SpqrTree t = detail::single_node_tree(sk, parent.kind);
  detail::SpqrCoder coder(t, nullptr, table);
  auto [own, cand] = coder.root_own(0);
  for (const auto& a : coder.attaches(0, cand, nullptr)) {
    if (a.edge == edge) return a.theta;
  }
  throw InvariantError("virtual edge not reached by the canonical order");
}

// Code of the SPQR tree rooted at its canonical centroid.
inline Code bi_code(const SpqrTree& tree, const LabelMap& labels, SpqrTrace* trace = nullptr) {
  std::vector<int> nodes;
  for (const auto& n : tree.nodes) nodes.insert(nodes.end(), n.skeleton.nodes.begin(), n.skeleton.nodes.end());
  LabelTable table = detail::label_table(nodes, labels);
  return detail::SpqrCoder(tree, nullptr, table).code(trace);
}

// ---------------------------------------------------------------------------
// Graph level
// ---------------------------------------------------------------------------

struct BlockDecomposition {
  SpqrTree spqr;                              // empty for a lone node
  std::vector<SkeletonEmbedding> embeddings;  // per SPQR node, R nodes only
};

struct ComponentDecomposition {
  Component component;
  BlockCutTree tree;
  std::vector<BlockDecomposition> blocks;
};

struct GraphDecomposition {
  int node_count = 0;
  std::vector<ComponentDecomposition> components;
};

inline BlockDecomposition decompose_block(const Block& block) {
  BlockDecomposition bd;
  if (block.edges.empty()) return bd;
  bd.spqr = spqr_tree(block);
  bd.embeddings.resize(bd.spqr.nodes.size());
  for (std::size_t i = 0; i < bd.spqr.nodes.size(); ++i) {
    if (bd.spqr.nodes[i].kind == SpqrKind::kR) bd.embeddings[i] = embed_skeleton(bd.spqr.nodes[i].skeleton);
  }
  return bd;
}

// Planarity check plus Block-Cut and SPQR decomposition of every component.
inline GraphDecomposition decompose(const Graph& g) {
  if (!is_planar(g)) throw NotPlanarError(kuratowski_witness(g));
  GraphDecomposition d;
  d.node_count = g.node_count();
  for (auto& comp : components(g)) {
    ComponentDecomposition cd{std::move(comp), {}, {}};
    cd.tree = block_cut_tree(cd.component.graph);
    cd.blocks.reserve(cd.tree.blocks.size());
    for (const auto& b : cd.tree.blocks) cd.blocks.push_back(decompose_block(b));
    d.components.push_back(std::move(cd));
  }
  return d;
}

struct BlockTrace {
  SpqrTrace spqr;
  Code code;
};

// Canonical data of one coded component, in component-local node ids.
struct ComponentTrace {
  TreeNodeRef root;
  std::vector<BlockTrace> blocks;
  std::map<int, Code> cut_codes;  // local cut node id -> subtree code
  Code code;
};

struct GraphTrace {
  std::vector<ComponentTrace> components;
};

namespace detail {

// Block-Cut level coder. Inside a block, nodes carry rank labels "(r)"
// into a sorted dictionary of the distinct node codes, which is emitted in
// front of the block's SPQR code. The cut node shared with the parent is
// marked by the empty code "()".
class ComponentCoder {
 public:
  explicit ComponentCoder(const ComponentDecomposition& cd) : cd_(cd) {
    const int n = cd_.component.graph.node_count();
    ranks_.resize(n);
    cut_codes_.resize(n);
  }

  Code code(ComponentTrace* trace) {
    Code best;
    const auto& roots = cd_.tree.centroids;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      ComponentTrace local;
      Code c = code_rooted(roots[i], trace ? &local : nullptr);
      if (i == 0 || c < best) {
        best = std::move(c);
        if (trace) *trace = std::move(local);
      }
    }
    if (trace) trace->code = best;
    return best;
  }

  Code code_rooted(TreeNodeRef root, ComponentTrace* trace) {
    const auto& tree = cd_.tree;
    const auto& g = cd_.component.graph;
    const int nb = static_cast<int>(tree.blocks.size());
    if (trace) {
      *trace = ComponentTrace{};
      trace->root = root;
      trace->blocks.resize(nb);
    }
    if (g.node_count() == 1) {
      Code c = leaf_code(g.color(0));
      if (trace) trace->blocks[0].code = c;
      return c;
    }
    // Tree nodes: blocks 0..nb-1, cut nodes nb + graph id.
    auto id_of = [&](TreeNodeRef r) { return r.kind == TreeNodeRef::Kind::kBlock ? r.id : nb + r.id; };
    const int start = id_of(root);
    std::vector<int> order{start};
    std::vector<int> parent_cut(nb, -1);
    std::vector<int> parent_block(g.node_count(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int x = order[i];
      if (x < nb) {
        for (int v : tree.blocks[x].nodes) {
          if (v == parent_cut[x] || !tree.is_cut(v)) continue;
          parent_block[v] = x;
          order.push_back(nb + v);
        }
      } else {
        const int c = x - nb;
        for (int b : tree.blocks_of[c]) {
          if (b == parent_block[c]) continue;
          parent_cut[b] = c;
          order.push_back(b);
        }
      }
    }
    Code result;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int x = *it;
      Code c;
      if (x < nb) {
        c = block_code(x, parent_cut[x], trace);
        if (trace) trace->blocks[x].code = c;
        if (x != start) {
          pending_[parent_cut[x]].push_back(std::move(c));
          continue;
        }
      } else {
        const int v = x - nb;
        auto& kids = pending_[v];
        std::sort(kids.begin(), kids.end());
        c.open().append(leaf_code(g.color(v)));
        for (const auto& k : kids) c.comma().append(k);
        c.close();
        pending_.erase(v);
        if (trace) trace->cut_codes[v] = c;
        if (x != start) {
          cut_codes_[v] = std::move(c);
          continue;
        }
      }
      result = std::move(c);
    }
    return result;
  }

 private:
  Code block_code(int b, int parent_cut, ComponentTrace* trace) {
    const auto& block = cd_.tree.blocks[b];
    const auto& g = cd_.component.graph;
    static const Code kMarker = Code(std::vector<Code::Token>{Code::kOpen, Code::kClose});
    std::vector<Code> own(block.nodes.size());
    for (std::size_t i = 0; i < block.nodes.size(); ++i) {
      const int v = block.nodes[i];
      if (v == parent_cut) {
        own[i] = kMarker;
      } else if (cd_.tree.is_cut(v)) {
        own[i] = std::move(cut_codes_[v]);
        cut_codes_[v] = Code{};
      } else {
        own[i] = leaf_code(g.color(v));
      }
    }
    std::vector<int> idx(own.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int c) { return own[a] < own[c]; });
    Code dict;
    dict.open();
    int r = -1;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k == 0 || own[idx[k - 1]] < own[idx[k]]) {
        ++r;
        if (r) dict.comma();
        dict.append(own[idx[k]]);
      }
      ranks_[block.nodes[idx[k]]] = leaf_code(r);
    }
    dict.close();
    const auto& bd = cd_.blocks[b];
    SpqrTrace* st = trace ? &trace->blocks[b].spqr : nullptr;
    Code bc = SpqrCoder(bd.spqr, &bd.embeddings, ranks_).code(st);
    Code c;
    c.tokens().reserve(dict.size() + bc.size() + 3);
    c.open().append(dict).comma().append(bc).close();
    return c;
  }

  const ComponentDecomposition& cd_;
  LabelTable ranks_;
  std::vector<Code> cut_codes_;
  std::map<int, std::vector<Code>> pending_;
};

}  // namespace detail

// Code of a decomposed graph: "(" sorted component codes ")".
inline Code graph_code(const GraphDecomposition& d, GraphTrace* trace = nullptr) {
  std::vector<Code> codes;
  codes.reserve(d.components.size());
  if (trace) trace->components.assign(d.components.size(), {});
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    codes.push_back(detail::ComponentCoder(d.components[i]).code(trace ? &trace->components[i] : nullptr));
  }
  std::sort(codes.begin(), codes.end());
  return wrap_list(codes);
}

// Complete isomorphism invariant of a planar graph. Throws NotPlanarError.
inline Code graph_code(const Graph& g) { return graph_code(decompose(g)); }

// Subtree code of every cut node of a connected planar graph, as computed
// inside graph_code.
inline std::map<int, Code> cut_subtree_codes(const Graph& g) {
  if (g.node_count() == 0 || !is_connected(g)) throw ArgumentError("cut_subtree_codes requires a connected graph");
  GraphDecomposition d = decompose(g);
  GraphTrace trace;
  graph_code(d, &trace);
  std::map<int, Code> out;
  for (auto& [v, c] : trace.components[0].cut_codes) out[d.components[0].component.original_ids[v]] = c;
  return out;
}

}  // namespace plancanon
