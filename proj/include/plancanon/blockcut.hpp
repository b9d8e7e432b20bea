#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "plancanon/error.hpp"
#include "plancanon/graph.hpp"

namespace plancanon {

// Maximal biconnected subgraph, a bridge, or a lone node.
struct Block {
  int id = -1;
  std::vector<int> nodes;   // sorted original ids
  std::vector<Edge> edges;  // (u < v), sorted
};

// Node of a Block-Cut tree: either a block (by id) or a cut node (by graph id).
struct TreeNodeRef {
  enum class Kind { kBlock, kCut };
  Kind kind = Kind::kBlock;
  int id = -1;

  friend bool operator==(const TreeNodeRef&, const TreeNodeRef&) = default;
};

struct BlockCutTree {
  std::vector<int> cut_nodes;  // sorted
  std::vector<Block> blocks;
  std::vector<std::pair<int, int>> tree_edges;  // (cut node, block id)
  std::vector<TreeNodeRef> centroids;           // one or two
  std::vector<std::vector<int>> blocks_of;      // per graph node, ids of containing blocks

  bool is_cut(int v) const { return std::binary_search(cut_nodes.begin(), cut_nodes.end(), v); }
  int tree_node_count() const { return static_cast<int>(cut_nodes.size() + blocks.size()); }
};

// Centroids of a tree on nodes 0..n-1: nodes none of whose branches holds
// more than half of the other nodes. Returns one or two nodes, ascending.
inline std::vector<int> tree_centroids(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) throw ArgumentError("centroid of an empty tree");
  if (static_cast<int>(edges.size()) != n - 1) throw ArgumentError("edge count does not match a tree");
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> parent(n, -1), order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  order.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : adj[order[i]]) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  if (static_cast<int>(order.size()) != n) throw ArgumentError("tree is not connected");
  std::vector<int> size(n, 1);
  for (int i = n - 1; i > 0; --i) size[parent[order[i]]] += size[order[i]];
  std::vector<int> result;
  for (int v = 0; v < n; ++v) {
    int heaviest = n - size[v];
    for (int w : adj[v]) {
      if (w != parent[v]) heaviest = std::max(heaviest, size[w]);
    }
    if (2 * heaviest <= n) result.push_back(v);
  }
  return result;
}

// A connected component together with the original ids of its nodes.
struct Component {
  Graph graph;
  std::vector<int> original_ids;  // local id -> id in the source graph
};

// Connected components, ordered by their smallest original node id.
inline std::vector<Component> components(const Graph& g) {
  std::vector<int> label(g.node_count(), -1);
  std::vector<Component> result;
  for (int s = 0; s < g.node_count(); ++s) {
    if (label[s] != -1) continue;
    std::vector<int> nodes{s};
    label[s] = static_cast<int>(result.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (int w : g.neighbors(nodes[i])) {
        if (label[w] == -1) {
          label[w] = label[s];
          nodes.push_back(w);
        }
      }
    }
    std::sort(nodes.begin(), nodes.end());
    Graph sub = induced_subgraph(g, nodes);
    result.push_back(Component{std::move(sub), std::move(nodes)});
  }
  return result;
}

// Blocks and cut nodes of a connected graph (iterative Hopcroft-Tarjan).
inline BlockCutTree block_cut_tree(const Graph& g) {
  const int n = g.node_count();
  if (n == 0) throw ArgumentError("block_cut_tree requires at least one node");
  if (!is_connected(g)) {
    throw ArgumentError("block_cut_tree requires a connected graph; process each component separately");
  }
  BlockCutTree tree;
  tree.blocks_of.assign(n, {});

  if (n == 1) {
    tree.blocks.push_back(Block{0, {0}, {}});
    tree.blocks_of[0] = {0};
    tree.centroids = {TreeNodeRef{TreeNodeRef::Kind::kBlock, 0}};
    return tree;
  }

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> edge_stack;
  int timer = 0;
  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };
  std::vector<Frame> stack{{0, -1, 0}};
  disc[0] = low[0] = timer++;

  auto emit_block = [&](int u, int v) {
    Block b;
    b.id = static_cast<int>(tree.blocks.size());
    while (true) {
      Edge e = edge_stack.back();
      edge_stack.pop_back();
      b.edges.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
      b.nodes.push_back(e.first);
      b.nodes.push_back(e.second);
      if (e == Edge{u, v}) break;
    }
    std::sort(b.nodes.begin(), b.nodes.end());
    b.nodes.erase(std::unique(b.nodes.begin(), b.nodes.end()), b.nodes.end());
    std::sort(b.edges.begin(), b.edges.end());
    for (int x : b.nodes) tree.blocks_of[x].push_back(b.id);
    tree.blocks.push_back(std::move(b));
  };

  while (!stack.empty()) {
    Frame& f = stack.back();
    const int v = f.v;
    auto nbrs = g.neighbors(v);
    if (f.next < nbrs.size()) {
      const int w = nbrs[f.next++];
      if (w == f.parent) continue;
      if (disc[w] == -1) {
        edge_stack.emplace_back(v, w);
        disc[w] = low[w] = timer++;
        stack.push_back({w, v, 0});
      } else if (disc[w] < disc[v]) {
        edge_stack.emplace_back(v, w);
        low[v] = std::min(low[v], disc[w]);
      }
      continue;
    }
    const int parent = f.parent;
    stack.pop_back();
    if (parent == -1) continue;
    low[parent] = std::min(low[parent], low[v]);
    if (low[v] >= disc[parent]) emit_block(parent, v);
  }

  for (int v = 0; v < n; ++v) {
    if (tree.blocks_of[v].size() >= 2) tree.cut_nodes.push_back(v);
  }
  // Tree node numbering for centroid search: blocks first, then cut nodes.
  const int nb = static_cast<int>(tree.blocks.size());
  std::vector<std::pair<int, int>> numbered;
  for (int i = 0; i < static_cast<int>(tree.cut_nodes.size()); ++i) {
    const int c = tree.cut_nodes[i];
    for (int b : tree.blocks_of[c]) {
      tree.tree_edges.emplace_back(c, b);
      numbered.emplace_back(nb + i, b);
    }
  }
  std::sort(tree.tree_edges.begin(), tree.tree_edges.end());
  for (int t : tree_centroids(tree.tree_node_count(), numbered)) {
    if (t < nb) {
      tree.centroids.push_back(TreeNodeRef{TreeNodeRef::Kind::kBlock, t});
    } else {
      tree.centroids.push_back(TreeNodeRef{TreeNodeRef::Kind::kCut, tree.cut_nodes[t - nb]});
    }
  }
  return tree;
}

}  // namespace plancanon
