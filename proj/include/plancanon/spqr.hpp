#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "plancanon/blockcut.hpp"
#include "plancanon/error.hpp"
#include "plancanon/graph.hpp"

namespace plancanon {

enum class SpqrKind { kS, kP, kQ, kR };

inline char kind_letter(SpqrKind k) {
  switch (k) {
    case SpqrKind::kS: return 'S';
    case SpqrKind::kP: return 'P';
    case SpqrKind::kQ: return 'Q';
    case SpqrKind::kR: return 'R';
  }
  return '?';
}

struct SkeletonEdge {
  int u = -1;
  int v = -1;
  bool is_virtual = false;
  int tree_edge = -1;  // paired tree edge for virtual edges, -1 for real ones

  friend bool operator==(const SkeletonEdge&, const SkeletonEdge&) = default;
};

// Skeleton of one SPQR node over original node ids. For S nodes the edges
// are stored in cycle order: edge i runs from edges[i].u to edges[i].v and
// edges[i].v == edges[i+1].u.
struct Skeleton {
  std::vector<int> nodes;  // sorted
  std::vector<SkeletonEdge> edges;
};

struct SpqrNode {
  int id = -1;
  SpqrKind kind = SpqrKind::kQ;
  Skeleton skeleton;
};

// Tree edge joining virtual edge `edge_a` of node `a` with `edge_b` of `b`.
struct SpqrTreeEdge {
  int id = -1;
  int a = -1;
  int edge_a = -1;
  int b = -1;
  int edge_b = -1;
};

struct SpqrTree {
  std::vector<SpqrNode> nodes;
  std::vector<SpqrTreeEdge> tree_edges;
  std::vector<int> centroids;  // one or two node ids
  int block_node_count = 0;

  // Neighbouring tree node across tree edge `te` as seen from `node`.
  int across(int te, int node) const {
    const auto& t = tree_edges[te];
    return t.a == node ? t.b : t.a;
  }
  int partner_edge(int te, int node) const {
    const auto& t = tree_edges[te];
    return t.a == node ? t.edge_b : t.edge_a;
  }
};

namespace detail {

// Working state of the split-pair decomposition of one block.
class SpqrBuilder {
 public:
  // Local ids follow the sorted order of block.nodes.
  explicit SpqrBuilder(const Block& block) : block_(block) {
    nb_ = static_cast<int>(block.nodes.size());
    for (auto [u, v] : block.edges) add_edge(local(u), local(v), false);
  }

  SpqrTree build() {
    if (block_.edges.empty()) throw ArgumentError("SPQR tree of a block without edges");
    if (block_.edges.size() == 1) {
      SpqrTree tree;
      auto [u, v] = block_.edges.front();
      tree.nodes.push_back(SpqrNode{0, SpqrKind::kQ, Skeleton{{u, v}, {SkeletonEdge{u, v, false, -1}}}});
      tree.centroids = {0};
      tree.block_node_count = 2;
      return tree;
    }
    check_biconnected();

    std::vector<int> all(edges_.size());
    std::iota(all.begin(), all.end(), 0);
    work_.push_back(Work{std::move(all), {}});
    stamp_.assign(nb_, 0);
    local_index_.assign(nb_, -1);
    while (!work_.empty()) {
      Work w = std::move(work_.back());
      work_.pop_back();
      process(std::move(w));
    }
    return assemble();
  }

 private:
  struct WEdge {
    int u, v;
    bool is_virtual;
    int twin;  // partner virtual edge, -1 for real edges
  };
  struct Work {
    std::vector<int> edges;
    std::vector<int> cleared;  // sorted local vertex ids with no separation pair
  };
  struct Finished {
    SpqrKind kind;
    std::vector<int> edges;
  };

  int local(int original) const {
    auto it = std::lower_bound(block_.nodes.begin(), block_.nodes.end(), original);
    return static_cast<int>(it - block_.nodes.begin());
  }

  int add_edge(int u, int v, bool is_virtual) {
    edges_.push_back(WEdge{u, v, is_virtual, -1});
    return static_cast<int>(edges_.size()) - 1;
  }

  std::pair<int, int> add_virtual_pair(int u, int v) {
    const int x = add_edge(u, v, true);
    const int y = add_edge(u, v, true);
    edges_[x].twin = y;
    edges_[y].twin = x;
    return {x, y};
  }

  void check_biconnected() const {
    std::vector<Edge> local_edges;
    for (const auto& e : edges_) local_edges.emplace_back(e.u, e.v);
    Graph g(nb_, local_edges);
    if (!is_connected(g)) throw ArgumentError("block is not connected");
    BlockCutTree bct = block_cut_tree(g);
    if (bct.blocks.size() != 1) throw ArgumentError("block is not biconnected");
  }

  // Local adjacency of the component currently being processed.
  struct LocalGraph {
    std::vector<int> vertices;             // block-local ids
    std::vector<std::vector<int>> adj;     // per local index: edge ids
  };

  LocalGraph build_local(const std::vector<int>& edges) {
    ++epoch_;
    LocalGraph lg;
    auto touch = [&](int v) {
      if (stamp_[v] != epoch_) {
        stamp_[v] = epoch_;
        local_index_[v] = static_cast<int>(lg.vertices.size());
        lg.vertices.push_back(v);
        lg.adj.emplace_back();
      }
      return local_index_[v];
    };
    for (int e : edges) {
      lg.adj[touch(edges_[e].u)].push_back(e);
      lg.adj[touch(edges_[e].v)].push_back(e);
    }
    return lg;
  }

  int other(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }

  void finish(SpqrKind kind, std::vector<int> edges) { finished_.push_back(Finished{kind, std::move(edges)}); }

  void process(Work w) {
    LocalGraph lg = build_local(w.edges);
    const int nv = static_cast<int>(lg.vertices.size());
    if (nv == 2) {
      if (w.edges.size() < 3) throw InvariantError("bond with fewer than three edges");
      finish(SpqrKind::kP, std::move(w.edges));
      return;
    }

    if (split_parallel(w)) return;

    bool all_degree_two = true;
    for (const auto& a : lg.adj) all_degree_two &= a.size() == 2;
    if (all_degree_two) {
      finish(SpqrKind::kS, std::move(w.edges));
      return;
    }

    if (split_chains(w, lg)) return;

    std::vector<char> is_cleared(nv, 0);
    for (int v : w.cleared) {
      if (stamp_[v] == epoch_) is_cleared[local_index_[v]] = 1;
    }
    for (int a = 0; a < nv; ++a) {
      if (is_cleared[a]) continue;
      const int b = articulation_without(lg, a);
      if (b == -1) {
        is_cleared[a] = 1;
        continue;
      }
      split_at(w, lg, a, b, is_cleared);
      return;
    }
    if (nv < 4) throw InvariantError("triconnected component with fewer than four nodes");
    finish(SpqrKind::kR, std::move(w.edges));
  }

  // Replaces every group of >= 2 parallel edges by a virtual edge and emits
  // the group as a bond. Returns true when the component was re-queued.
  bool split_parallel(Work& w) {
    std::vector<int> sorted = w.edges;
    auto key = [&](int e) {
      return std::make_pair(std::min(edges_[e].u, edges_[e].v), std::max(edges_[e].u, edges_[e].v));
    };
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) { return key(a) < key(b); });
    bool changed = false;
    std::vector<int> rest;
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && key(sorted[j]) == key(sorted[i])) ++j;
      if (j - i >= 2) {
        auto [x, y] = add_virtual_pair(key(sorted[i]).first, key(sorted[i]).second);
        std::vector<int> bond(sorted.begin() + static_cast<std::ptrdiff_t>(i),
                              sorted.begin() + static_cast<std::ptrdiff_t>(j));
        bond.push_back(x);
        finish(SpqrKind::kP, std::move(bond));
        rest.push_back(y);
        changed = true;
      } else {
        rest.push_back(sorted[i]);
      }
      i = j;
    }
    if (!changed) return false;
    work_.push_back(Work{std::move(rest), std::move(w.cleared)});
    return true;
  }

  // Cuts every maximal path of degree-2 vertices (in a component that is
  // not a cycle) off as its own cycle. Returns true when re-queued.
  bool split_chains(Work& w, const LocalGraph& lg) {
    const int nv = static_cast<int>(lg.vertices.size());
    std::vector<char> edge_taken;
    std::vector<int> rest;
    bool changed = false;
    ++epoch_edges_;
    if (edge_mark_.size() < edges_.size()) edge_mark_.resize(edges_.size() * 2 + 16, 0);
    for (int s = 0; s < nv; ++s) {
      if (lg.adj[s].size() == 2) continue;
      for (int e0 : lg.adj[s]) {
        if (edge_mark_[e0] == epoch_edges_) continue;
        const int first = other(e0, lg.vertices[s]);
        if (lg.adj[local_index_[first]].size() != 2) continue;
        // Walk the chain from s through degree-2 vertices.
        std::vector<int> chain{e0};
        edge_mark_[e0] = epoch_edges_;
        int prev_edge = e0;
        int cur = first;
        while (lg.adj[local_index_[cur]].size() == 2) {
          const auto& inc = lg.adj[local_index_[cur]];
          const int next = inc[0] == prev_edge ? inc[1] : inc[0];
          edge_mark_[next] = epoch_edges_;
          chain.push_back(next);
          prev_edge = next;
          cur = other(next, cur);
        }
        auto [x, y] = add_virtual_pair(lg.vertices[s], cur);
        chain.push_back(x);
        finish(SpqrKind::kS, std::move(chain));
        rest.push_back(y);
        changed = true;
      }
    }
    if (!changed) return false;
    for (int e : w.edges) {
      if (edge_mark_[e] != epoch_edges_) rest.push_back(e);
    }
    work_.push_back(Work{std::move(rest), std::move(w.cleared)});
    return true;
  }

  // Some articulation point of the component minus local vertex a, or -1.
  int articulation_without(const LocalGraph& lg, int a) {
    const int nv = static_cast<int>(lg.vertices.size());
    disc_.assign(nv, -1);
    low_.assign(nv, 0);
    const int root = a == 0 ? 1 : 0;
    int timer = 0;
    struct Frame {
      int v;
      int parent_edge;
      std::size_t next;
    };
    std::vector<Frame> stack{{root, -1, 0}};
    disc_[root] = low_[root] = timer++;
    int root_children = 0;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int v = f.v;
      if (f.next < lg.adj[v].size()) {
        const int e = lg.adj[v][f.next++];
        if (e == f.parent_edge) continue;
        const int w = local_index_[other(e, lg.vertices[v])];
        if (w == a) continue;
        if (disc_[w] == -1) {
          disc_[w] = low_[w] = timer++;
          if (v == root) ++root_children;
          stack.push_back({w, e, 0});
        } else {
          low_[v] = std::min(low_[v], disc_[w]);
        }
        continue;
      }
      stack.pop_back();
      if (stack.empty()) break;
      const int p = stack.back().v;
      low_[p] = std::min(low_[p], low_[v]);
      if (p != root && low_[v] >= disc_[p]) return p;
    }
    if (root_children >= 2) return root;
    return -1;
  }

  void split_at(Work& w, const LocalGraph& lg, int a, int b, const std::vector<char>& is_cleared) {
    const int nv = static_cast<int>(lg.vertices.size());
    // Components of the component minus {a, b}; take the one with the
    // fewest incident edges as the split-off side.
    std::vector<int> comp(nv, -1);
    std::vector<int> comp_edges;
    int ncomp = 0;
    for (int s = 0; s < nv; ++s) {
      if (s == a || s == b || comp[s] != -1) continue;
      std::vector<int> stack{s};
      comp[s] = ncomp;
      int count = 0;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int e : lg.adj[v]) {
          ++count;
          const int x = local_index_[other(e, lg.vertices[v])];
          if (x == a || x == b || comp[x] != -1) continue;
          comp[x] = ncomp;
          stack.push_back(x);
        }
      }
      comp_edges.push_back(count);
      ++ncomp;
    }
    if (ncomp < 2) throw InvariantError("separation pair does not separate");
    const int chosen = static_cast<int>(std::min_element(comp_edges.begin(), comp_edges.end()) - comp_edges.begin());

    std::vector<int> side1, side2;
    for (int e : w.edges) {
      const int lu = local_index_[edges_[e].u];
      const int lv = local_index_[edges_[e].v];
      const bool in1 = (lu != a && lu != b && comp[lu] == chosen) || (lv != a && lv != b && comp[lv] == chosen);
      (in1 ? side1 : side2).push_back(e);
    }
    auto [x, y] = add_virtual_pair(lg.vertices[a], lg.vertices[b]);
    side1.push_back(x);
    side2.push_back(y);

    std::vector<int> cleared;
    for (int v = 0; v < nv; ++v) {
      if (is_cleared[v]) cleared.push_back(lg.vertices[v]);
    }
    std::sort(cleared.begin(), cleared.end());
    work_.push_back(Work{std::move(side2), cleared});
    work_.push_back(Work{std::move(side1), std::move(cleared)});
  }

  SpqrTree assemble() {
    const int nf = static_cast<int>(finished_.size());
    std::vector<int> owner(edges_.size(), -1);
    for (int c = 0; c < nf; ++c) {
      for (int e : finished_[c].edges) owner[e] = c;
    }
    // Merge adjacent bonds and adjacent polygons.
    std::vector<int> uf(nf);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::vector<char> removed(edges_.size(), 0);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      const int t = edges_[e].twin;
      if (t < e || owner[e] == -1) continue;
      const int ca = owner[e], cb = owner[t];
      const SpqrKind ka = finished_[ca].kind, kb = finished_[cb].kind;
      if (ka == kb && (ka == SpqrKind::kS || ka == SpqrKind::kP)) {
        removed[e] = removed[t] = 1;
        uf[find(ca)] = find(cb);
      }
    }
    std::vector<int> group_of(nf, -1);
    SpqrTree tree;
    tree.block_node_count = nb_;
    std::vector<std::vector<int>> group_edges;
    for (int c = 0; c < nf; ++c) {
      const int r = find(c);
      if (group_of[r] == -1) {
        group_of[r] = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(SpqrNode{group_of[r], finished_[c].kind, {}});
        group_edges.emplace_back();
      }
      group_of[c] = group_of[r];
      for (int e : finished_[c].edges) {
        if (!removed[e]) group_edges[group_of[c]].push_back(e);
      }
    }
    std::vector<int> position(edges_.size(), -1);
    for (auto& node : tree.nodes) {
      auto& es = group_edges[node.id];
      if (node.kind == SpqrKind::kS) es = cycle_order(es);
      for (int i = 0; i < static_cast<int>(es.size()); ++i) position[es[i]] = i;
      node.skeleton = make_skeleton(es, node.kind);
    }
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      const int t = edges_[e].twin;
      if (t < e || owner[e] == -1 || removed[e]) continue;
      SpqrTreeEdge te{static_cast<int>(tree.tree_edges.size()), group_of[owner[e]], position[e],
                      group_of[owner[t]], position[t]};
      tree.nodes[te.a].skeleton.edges[te.edge_a].tree_edge = te.id;
      tree.nodes[te.b].skeleton.edges[te.edge_b].tree_edge = te.id;
      tree.tree_edges.push_back(te);
    }
    for (const auto& node : tree.nodes) validate(node);
    std::vector<std::pair<int, int>> adj;
    for (const auto& te : tree.tree_edges) adj.emplace_back(te.a, te.b);
    tree.centroids = tree_centroids(static_cast<int>(tree.nodes.size()), adj);
    return tree;
  }

  // Orders the edges of a cycle so that consecutive edges share a node and
  // orients each one along the traversal.
  std::vector<int> cycle_order(const std::vector<int>& es) {
    std::vector<int> order;
    order.reserve(es.size());
    std::vector<std::vector<int>> inc(nb_);
    std::vector<int> touched;
    for (int e : es) {
      for (int x : {edges_[e].u, edges_[e].v}) {
        if (inc[x].empty()) touched.push_back(x);
        inc[x].push_back(e);
      }
    }
    for (int x : touched) {
      if (inc[x].size() != 2) throw InvariantError("S node skeleton is not a cycle");
    }
    int start_node = std::min(edges_[es.front()].u, edges_[es.front()].v);
    for (int x : touched) start_node = std::min(start_node, x);
    std::vector<char> used(edges_.size(), 0);
    int cur = start_node;
    int e = std::min(inc[cur][0], inc[cur][1]);
    oriented_.clear();
    for (std::size_t i = 0; i < es.size(); ++i) {
      used[e] = 1;
      order.push_back(e);
      const int nxt = other(e, cur);
      oriented_.emplace_back(cur, nxt);
      cur = nxt;
      const auto& ic = inc[cur];
      e = used[ic[0]] ? ic[1] : ic[0];
    }
    if (cur != start_node) throw InvariantError("S node skeleton is not a single cycle");
    if (orientation_.size() < edges_.size()) orientation_.resize(edges_.size());
    for (std::size_t i = 0; i < order.size(); ++i) orientation_[order[i]] = oriented_[i];
    return order;
  }

  Skeleton make_skeleton(const std::vector<int>& es, SpqrKind kind) {
    Skeleton sk;
    for (int e : es) {
      int u = block_.nodes[edges_[e].u];
      int v = block_.nodes[edges_[e].v];
      if (kind == SpqrKind::kS) {
        u = block_.nodes[orientation_[e].first];
        v = block_.nodes[orientation_[e].second];
      }
      sk.edges.push_back(SkeletonEdge{u, v, edges_[e].is_virtual, -1});
      sk.nodes.push_back(u);
      sk.nodes.push_back(v);
    }
    std::sort(sk.nodes.begin(), sk.nodes.end());
    sk.nodes.erase(std::unique(sk.nodes.begin(), sk.nodes.end()), sk.nodes.end());
    return sk;
  }

  static void validate(const SpqrNode& node) {
    const auto& sk = node.skeleton;
    switch (node.kind) {
      case SpqrKind::kS:
        if (sk.edges.size() < 3 || sk.nodes.size() != sk.edges.size()) {
          throw InvariantError("S skeleton must be a cycle of length >= 3");
        }
        break;
      case SpqrKind::kP:
        if (sk.nodes.size() != 2 || sk.edges.size() < 3) {
          throw InvariantError("P skeleton must be a dipole with >= 3 edges");
        }
        break;
      case SpqrKind::kR:
        if (sk.nodes.size() < 4) throw InvariantError("R skeleton must have >= 4 nodes");
        break;
      case SpqrKind::kQ:
        break;
    }
  }

  const Block& block_;
  int nb_ = 0;
  std::vector<WEdge> edges_;
  std::vector<Work> work_;
  std::vector<Finished> finished_;
  std::vector<int> stamp_, local_index_;
  int epoch_ = 0;
  std::vector<int> edge_mark_;
  int epoch_edges_ = 0;
  std::vector<int> disc_, low_;
  std::vector<std::pair<int, int>> oriented_;
  std::vector<std::pair<int, int>> orientation_;
};

}  // namespace detail

// SPQR tree of a biconnected block (or a single Q node for a bridge).
inline SpqrTree spqr_tree(const Block& block) { return detail::SpqrBuilder(block).build(); }

// Reassembles the block by gluing skeletons along paired virtual edges.
inline Block glue(const SpqrTree& tree) {
  for (const auto& te : tree.tree_edges) {
    if (te.a < 0 || te.b < 0 || te.a >= static_cast<int>(tree.nodes.size()) ||
        te.b >= static_cast<int>(tree.nodes.size())) {
      throw InvariantError("tree edge references an unknown SPQR node");
    }
    const auto& ea = tree.nodes[te.a].skeleton.edges.at(te.edge_a);
    const auto& eb = tree.nodes[te.b].skeleton.edges.at(te.edge_b);
    const bool same_pair = (ea.u == eb.u && ea.v == eb.v) || (ea.u == eb.v && ea.v == eb.u);
    if (!ea.is_virtual || !eb.is_virtual || ea.tree_edge != te.id || eb.tree_edge != te.id || !same_pair) {
      throw InvariantError("virtual edge pairing is inconsistent");
    }
  }
  Block block;
  for (const auto& node : tree.nodes) {
    for (const auto& e : node.skeleton.edges) {
      if (e.is_virtual) {
        if (e.tree_edge < 0 || e.tree_edge >= static_cast<int>(tree.tree_edges.size())) {
          throw InvariantError("dangling virtual edge");
        }
        continue;
      }
      block.edges.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
      block.nodes.push_back(e.u);
      block.nodes.push_back(e.v);
    }
  }
  std::sort(block.nodes.begin(), block.nodes.end());
  block.nodes.erase(std::unique(block.nodes.begin(), block.nodes.end()), block.nodes.end());
  std::sort(block.edges.begin(), block.edges.end());
  return block;
}

}  // namespace plancanon
