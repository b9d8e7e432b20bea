#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plancanon/blockcut.hpp"
#include "plancanon/error.hpp"
#include "plancanon/graph.hpp"
#include "plancanon/khc.hpp"
#include "plancanon/spqr.hpp"

namespace plancanon {

inline constexpr int kSchemaVersion = 1;

// Serialized decomposition of one graph. All node ids are ids of the input
// graph; block ids and SPQR node ids are numbered globally across the
// record; tree edge ids are local to their block.
struct RecordSkeletonEdge {
  int u = -1;
  int v = -1;
  bool is_virtual = false;
  int pair = -1;  // tree edge id for virtual edges

  friend bool operator==(const RecordSkeletonEdge&, const RecordSkeletonEdge&) = default;
};

struct RecordSpqrNode {
  int id = -1;
  SpqrKind kind = SpqrKind::kQ;
  std::vector<int> nodes;
  std::vector<RecordSkeletonEdge> edges;
  std::vector<int> omega;  // S and R only
  std::vector<int> kappa;

  friend bool operator==(const RecordSpqrNode&, const RecordSpqrNode&) = default;
};

struct RecordTreeEdge {
  int id = -1;
  int a = -1;
  int edge_a = -1;
  int b = -1;
  int edge_b = -1;
  int theta = 0;

  friend bool operator==(const RecordTreeEdge&, const RecordTreeEdge&) = default;
};

struct RecordSpqr {
  int root = -1;
  std::vector<RecordSpqrNode> nodes;
  std::vector<RecordTreeEdge> tree_edges;

  friend bool operator==(const RecordSpqr&, const RecordSpqr&) = default;
};

struct RecordBlock {
  int id = -1;
  int component = -1;
  std::vector<int> nodes;
  std::vector<Edge> edges;
  std::optional<RecordSpqr> spqr;  // absent for a lone node

  friend bool operator==(const RecordBlock&, const RecordBlock&) = default;
};

struct RecordBlockCutTree {
  int component = -1;
  TreeNodeRef root;  // block id or graph node id
  std::vector<std::pair<int, int>> edges;                 // (cut node, block id)
  std::vector<std::pair<int, std::string>> subtree_codes;  // (cut node, code)

  friend bool operator==(const RecordBlockCutTree&, const RecordBlockCutTree&) = default;
};

struct DecompositionRecord {
  int node_count = 0;
  std::vector<Edge> edges;
  std::vector<int> colors;
  std::string code;
  std::vector<int> cut_nodes;
  std::vector<RecordBlock> blocks;
  std::vector<RecordBlockCutTree> block_cut_trees;
  std::vector<std::vector<int>> sigma;  // per node: SPQR node ids whose skeleton holds it
  std::vector<std::vector<int>> pi;     // per node: block ids holding it

  friend bool operator==(const DecompositionRecord&, const DecompositionRecord&) = default;
};

inline DecompositionRecord export_decomposition(const Graph& g) {
  GraphDecomposition d = decompose(g);
  GraphTrace trace;
  Code code = graph_code(d, &trace);

  DecompositionRecord r;
  r.node_count = g.node_count();
  r.edges = g.edges();
  r.colors = g.colors();
  r.code = code.to_string();
  r.sigma.assign(g.node_count(), {});
  r.pi.assign(g.node_count(), {});

  int next_block = 0;
  int next_spqr = 0;
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    const auto& cd = d.components[ci];
    const auto& ids = cd.component.original_ids;
    const auto& ct = trace.components[ci];
    const int block_base = next_block;
    for (int c : cd.tree.cut_nodes) r.cut_nodes.push_back(ids[c]);

    for (std::size_t bi = 0; bi < cd.tree.blocks.size(); ++bi) {
      const auto& b = cd.tree.blocks[bi];
      RecordBlock rb;
      rb.id = next_block++;
      rb.component = static_cast<int>(ci);
      for (int v : b.nodes) {
        rb.nodes.push_back(ids[v]);
        r.pi[ids[v]].push_back(rb.id);
      }
      for (auto [u, v] : b.edges) rb.edges.emplace_back(std::min(ids[u], ids[v]), std::max(ids[u], ids[v]));
      const auto& spqr = cd.blocks[bi].spqr;
      if (!spqr.nodes.empty()) {
        const auto& st = ct.blocks[bi].spqr;
        const int base = next_spqr;
        RecordSpqr rs;
        rs.root = base + st.root;
        for (const auto& node : spqr.nodes) {
          RecordSpqrNode rn;
          rn.id = base + node.id;
          rn.kind = node.kind;
          for (int v : node.skeleton.nodes) {
            rn.nodes.push_back(ids[v]);
            r.sigma[ids[v]].push_back(rn.id);
          }
          for (const auto& e : node.skeleton.edges) {
            rn.edges.push_back(RecordSkeletonEdge{ids[e.u], ids[e.v], e.is_virtual, e.tree_edge});
          }
          if (node.kind == SpqrKind::kS || node.kind == SpqrKind::kR) {
            for (int v : st.walks[node.id].omega) rn.omega.push_back(ids[v]);
            rn.kappa = st.walks[node.id].kappa;
          }
          rs.nodes.push_back(std::move(rn));
        }
        for (const auto& te : spqr.tree_edges) {
          rs.tree_edges.push_back(RecordTreeEdge{te.id, base + te.a, te.edge_a, base + te.b, te.edge_b, st.theta[te.id]});
        }
        next_spqr += static_cast<int>(spqr.nodes.size());
        rb.spqr = std::move(rs);
      }
      r.blocks.push_back(std::move(rb));
    }

    RecordBlockCutTree bt;
    bt.component = static_cast<int>(ci);
    bt.root = ct.root;
    bt.root.id = ct.root.kind == TreeNodeRef::Kind::kBlock ? block_base + ct.root.id : ids[ct.root.id];
    for (auto [c, b] : cd.tree.tree_edges) bt.edges.emplace_back(ids[c], block_base + b);
    for (const auto& [v, c] : ct.cut_codes) bt.subtree_codes.emplace_back(ids[v], c.to_string());
    std::sort(bt.subtree_codes.begin(), bt.subtree_codes.end());
    r.block_cut_trees.push_back(std::move(bt));
  }
  std::sort(r.cut_nodes.begin(), r.cut_nodes.end());
  return r;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const DecompositionRecord& r) {
  using nlohmann::json;
  auto edge_list = [](const std::vector<Edge>& es) {
    json a = json::array();
    for (auto [u, v] : es) a.push_back({u, v});
    return a;
  };
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    json jb = {{"id", b.id}, {"component", b.component}, {"nodes", b.nodes}, {"edges", edge_list(b.edges)}};
    if (b.spqr) {
      json nodes = json::array();
      for (const auto& n : b.spqr->nodes) {
        json edges = json::array();
        for (const auto& e : n.edges) {
          edges.push_back({{"u", e.u}, {"v", e.v}, {"virtual", e.is_virtual},
                           {"pair", e.is_virtual ? json(e.pair) : json(nullptr)}});
        }
        json jn = {{"id", n.id}, {"kind", std::string(1, kind_letter(n.kind))}, {"nodes", n.nodes}, {"edges", edges}};
        if (n.kind == SpqrKind::kS || n.kind == SpqrKind::kR) jn["walk"] = {{"omega", n.omega}, {"kappa", n.kappa}};
        nodes.push_back(std::move(jn));
      }
      json tes = json::array();
      for (const auto& t : b.spqr->tree_edges) {
        tes.push_back(
            {{"id", t.id}, {"a", t.a}, {"edge_a", t.edge_a}, {"b", t.b}, {"edge_b", t.edge_b}, {"theta", t.theta}});
      }
      jb["spqr"] = {{"root", b.spqr->root}, {"nodes", nodes}, {"tree_edges", tes}};
    } else {
      jb["spqr"] = nullptr;
    }
    blocks.push_back(std::move(jb));
  }
  json trees = json::array();
  for (const auto& t : r.block_cut_trees) {
    json codes = json::array();
    for (const auto& [v, c] : t.subtree_codes) codes.push_back({{"node", v}, {"code", c}});
    json edges = json::array();
    for (auto [c, b] : t.edges) edges.push_back({c, b});
    trees.push_back({{"component", t.component},
                     {"root", {{"kind", t.root.kind == TreeNodeRef::Kind::kBlock ? "block" : "cut"}, {"id", t.root.id}}},
                     {"edges", edges},
                     {"subtree_codes", codes}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"graph", {{"n", r.node_count}, {"edges", edge_list(r.edges)}, {"colors", r.colors}}},
              {"code", r.code},
              {"cut_nodes", r.cut_nodes},
              {"blocks", blocks},
              {"block_cut_trees", trees},
              {"membership", {{"sigma", r.sigma}, {"pi", r.pi}}}};
}

namespace detail {

class RecordReader {
 public:
  DecompositionRecord read(const nlohmann::json& j) {
    object(j, "record", {"schema_version", "graph", "code", "cut_nodes", "blocks", "block_cut_trees", "membership"});
    if (integer(j.at("schema_version"), "schema_version") != kSchemaVersion) {
      fail("unsupported schema_version");
    }
    DecompositionRecord r;
    const auto& g = j.at("graph");
    object(g, "graph", {"n", "edges", "colors"});
    r.node_count = integer(g.at("n"), "graph.n");
    if (r.node_count < 0) fail("graph.n must be non-negative");
    r.edges = edges(g.at("edges"), "graph.edges");
    r.colors = ints(g.at("colors"), "graph.colors");
    if (static_cast<int>(r.colors.size()) != r.node_count) fail("graph.colors length must equal graph.n");
    n_ = r.node_count;
    if (!j.at("code").is_string()) fail("code must be a string");
    r.code = j.at("code").get<std::string>();
    r.cut_nodes = ints(j.at("cut_nodes"), "cut_nodes");
    for (int v : r.cut_nodes) node(v, "cut_nodes");

    const auto& jb = j.at("blocks");
    if (!jb.is_array()) fail("blocks must be an array");
    int spqr_count = 0;
    for (std::size_t i = 0; i < jb.size(); ++i) {
      r.blocks.push_back(block(jb[i], static_cast<int>(i), spqr_count));
    }
    const auto& jt = j.at("block_cut_trees");
    if (!jt.is_array()) fail("block_cut_trees must be an array");
    for (const auto& t : jt) r.block_cut_trees.push_back(block_cut_tree(t, r));

    const auto& m = j.at("membership");
    object(m, "membership", {"sigma", "pi"});
    r.sigma = lists(m.at("sigma"), "membership.sigma");
    r.pi = lists(m.at("pi"), "membership.pi");
    if (static_cast<int>(r.sigma.size()) != n_ || static_cast<int>(r.pi.size()) != n_) {
      fail("membership lists must have one entry per node");
    }
    check_membership(r);
    return r;
  }

 private:
  [[noreturn]] static void fail(const std::string& what) { throw ValidationError("invalid record: " + what); }

  static void object(const nlohmann::json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) fail(where + " must be an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items()) {
      if (!allowed.count(k)) fail("unknown field '" + k + "' in " + where);
    }
    for (const auto& k : allowed) {
      if (!j.contains(k)) fail("missing field '" + k + "' in " + where);
    }
  }
  static int integer(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where + " must be an integer");
    const auto v = j.get<long long>();
    if (v < INT32_MIN || v > INT32_MAX) fail(where + " is out of range");
    return static_cast<int>(v);
  }
  static std::vector<int> ints(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) fail(where + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(integer(x, where));
    return out;
  }
  static std::vector<std::vector<int>> lists(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) fail(where + " must be an array");
    std::vector<std::vector<int>> out;
    for (const auto& x : j) out.push_back(ints(x, where));
    return out;
  }
  std::vector<Edge> edges(const nlohmann::json& j, const std::string& where) const {
    if (!j.is_array()) fail(where + " must be an array");
    std::vector<Edge> out;
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2) fail(where + " entries must be [u, v]");
      out.emplace_back(integer(e[0], where), integer(e[1], where));
    }
    return out;
  }
  void node(int v, const std::string& where) const {
    if (v < 0 || v >= n_) fail(where + " references unknown node " + std::to_string(v));
  }

  RecordBlock block(const nlohmann::json& j, int index, int& spqr_count) {
    object(j, "block", {"id", "component", "nodes", "edges", "spqr"});
    RecordBlock b;
    b.id = integer(j.at("id"), "block.id");
    if (b.id != index) fail("block ids must be 0..k-1 in order");
    b.component = integer(j.at("component"), "block.component");
    b.nodes = ints(j.at("nodes"), "block.nodes");
    for (int v : b.nodes) node(v, "block.nodes");
    b.edges = edges(j.at("edges"), "block.edges");
    for (auto [u, v] : b.edges) {
      if (!std::binary_search(b.nodes.begin(), b.nodes.end(), u) ||
          !std::binary_search(b.nodes.begin(), b.nodes.end(), v)) {
        fail("block edge endpoint outside the block");
      }
    }
    if (!std::is_sorted(b.nodes.begin(), b.nodes.end())) fail("block.nodes must be sorted");
    if (j.at("spqr").is_null()) {
      if (!b.edges.empty() || b.nodes.size() != 1) fail("only a lone-node block may omit its SPQR tree");
      return b;
    }
    b.spqr = spqr(j.at("spqr"), spqr_count);
    return b;
  }

  RecordSpqr spqr(const nlohmann::json& j, int& spqr_count) {
    object(j, "spqr", {"root", "nodes", "tree_edges"});
    RecordSpqr s;
    const int base = spqr_count;
    const auto& jn = j.at("nodes");
    if (!jn.is_array() || jn.empty()) fail("spqr.nodes must be a non-empty array");
    for (std::size_t i = 0; i < jn.size(); ++i) {
      RecordSpqrNode n = spqr_node(jn[i]);
      if (n.id != base + static_cast<int>(i)) fail("SPQR node ids must be consecutive across the record");
      s.nodes.push_back(std::move(n));
    }
    spqr_count += static_cast<int>(jn.size());
    s.root = integer(j.at("root"), "spqr.root");
    if (s.root < base || s.root >= spqr_count) fail("spqr.root references a node outside its block");
    const auto& jt = j.at("tree_edges");
    if (!jt.is_array()) fail("spqr.tree_edges must be an array");
    if (jt.size() + 1 != jn.size()) fail("SPQR tree must have one edge fewer than nodes");
    for (std::size_t i = 0; i < jt.size(); ++i) {
      object(jt[i], "tree edge", {"id", "a", "edge_a", "b", "edge_b", "theta"});
      RecordTreeEdge t{integer(jt[i].at("id"), "tree_edge.id"), integer(jt[i].at("a"), "tree_edge.a"),
                       integer(jt[i].at("edge_a"), "tree_edge.edge_a"), integer(jt[i].at("b"), "tree_edge.b"),
                       integer(jt[i].at("edge_b"), "tree_edge.edge_b"), integer(jt[i].at("theta"), "tree_edge.theta")};
      if (t.id != static_cast<int>(i)) fail("tree edge ids must be 0..k-1 in order");
      for (auto [x, e] : {std::pair{t.a, t.edge_a}, std::pair{t.b, t.edge_b}}) {
        if (x < base || x >= spqr_count) fail("tree edge references a node outside its block");
        const auto& node = s.nodes[x - base];
        if (e < 0 || e >= static_cast<int>(node.edges.size())) fail("tree edge references an unknown skeleton edge");
        const auto& se = node.edges[e];
        if (!se.is_virtual || se.pair != t.id) fail("tree edge and virtual edge pairing disagree");
      }
      const auto& ea = s.nodes[t.a - base].edges[t.edge_a];
      const auto& eb = s.nodes[t.b - base].edges[t.edge_b];
      if (std::minmax(ea.u, ea.v) != std::minmax(eb.u, eb.v)) fail("paired virtual edges join different nodes");
      if (t.theta < 0) fail("theta must be non-negative");
      s.tree_edges.push_back(t);
    }
    for (const auto& n : s.nodes) {
      for (const auto& e : n.edges) {
        if (e.is_virtual && (e.pair < 0 || e.pair >= static_cast<int>(s.tree_edges.size()))) {
          fail("dangling virtual edge");
        }
      }
    }
    return s;
  }

  RecordSpqrNode spqr_node(const nlohmann::json& j) {
    if (!j.is_object()) fail("SPQR node must be an object");
    std::string kind_text = j.contains("kind") && j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    const bool walked = kind_text == "S" || kind_text == "R";
    if (walked) {
      object(j, "SPQR node", {"id", "kind", "nodes", "edges", "walk"});
    } else {
      object(j, "SPQR node", {"id", "kind", "nodes", "edges"});
    }
    RecordSpqrNode n;
    n.id = integer(j.at("id"), "spqr_node.id");
    if (kind_text == "S") {
      n.kind = SpqrKind::kS;
    } else if (kind_text == "P") {
      n.kind = SpqrKind::kP;
    } else if (kind_text == "Q") {
      n.kind = SpqrKind::kQ;
    } else if (kind_text == "R") {
      n.kind = SpqrKind::kR;
    } else {
      fail("SPQR node kind must be one of S, P, Q, R");
    }
    n.nodes = ints(j.at("nodes"), "spqr_node.nodes");
    for (int v : n.nodes) node(v, "spqr_node.nodes");
    const auto& je = j.at("edges");
    if (!je.is_array()) fail("spqr_node.edges must be an array");
    for (const auto& e : je) {
      object(e, "skeleton edge", {"u", "v", "virtual", "pair"});
      if (!e.at("virtual").is_boolean()) fail("skeleton edge 'virtual' must be a boolean");
      RecordSkeletonEdge se;
      se.u = integer(e.at("u"), "skeleton_edge.u");
      se.v = integer(e.at("v"), "skeleton_edge.v");
      se.is_virtual = e.at("virtual").get<bool>();
      if (se.is_virtual) {
        se.pair = integer(e.at("pair"), "skeleton_edge.pair");
      } else if (!e.at("pair").is_null()) {
        fail("real skeleton edges must have a null pair");
      }
      if (!std::binary_search(n.nodes.begin(), n.nodes.end(), se.u) ||
          !std::binary_search(n.nodes.begin(), n.nodes.end(), se.v) || se.u == se.v) {
        fail("skeleton edge endpoints must be distinct skeleton nodes");
      }
      n.edges.push_back(se);
    }
    if (walked) {
      const auto& w = j.at("walk");
      object(w, "walk", {"omega", "kappa"});
      n.omega = ints(w.at("omega"), "walk.omega");
      n.kappa = ints(w.at("kappa"), "walk.kappa");
      check_walk(n);
    }
    return n;
  }

  static void check_walk(const RecordSpqrNode& n) {
    if (n.omega.empty() || n.omega.size() != n.kappa.size()) fail("walk omega and kappa must have equal non-zero length");
    if (n.kappa != kappa_of(n.omega)) fail("walk kappa is not the first-visit numbering of omega");
    const std::size_t expected = n.kind == SpqrKind::kR ? 2 * n.edges.size() + 1 : n.edges.size() + 1;
    if (n.omega.size() != expected) fail("walk length does not match the skeleton");
    for (int v : n.omega) {
      if (!std::binary_search(n.nodes.begin(), n.nodes.end(), v)) fail("walk visits a node outside the skeleton");
    }
  }

  RecordBlockCutTree block_cut_tree(const nlohmann::json& j, const DecompositionRecord& r) {
    object(j, "block_cut_tree", {"component", "root", "edges", "subtree_codes"});
    RecordBlockCutTree t;
    t.component = integer(j.at("component"), "block_cut_tree.component");
    const auto& root = j.at("root");
    object(root, "block_cut_tree.root", {"kind", "id"});
    const std::string kind = root.at("kind").is_string() ? root.at("kind").get<std::string>() : "";
    if (kind != "block" && kind != "cut") fail("block_cut_tree.root.kind must be 'block' or 'cut'");
    t.root.kind = kind == "block" ? TreeNodeRef::Kind::kBlock : TreeNodeRef::Kind::kCut;
    t.root.id = integer(root.at("id"), "block_cut_tree.root.id");
    if (t.root.kind == TreeNodeRef::Kind::kBlock) {
      if (t.root.id < 0 || t.root.id >= static_cast<int>(r.blocks.size()) ||
          r.blocks[t.root.id].component != t.component) {
        fail("block_cut_tree.root references a block of another component");
      }
    } else if (!std::binary_search(r.cut_nodes.begin(), r.cut_nodes.end(), t.root.id)) {
      fail("block_cut_tree.root references a node that is not a cut node");
    }
    for (auto [c, b] : edges(j.at("edges"), "block_cut_tree.edges")) {
      if (!std::binary_search(r.cut_nodes.begin(), r.cut_nodes.end(), c)) fail("tree edge cut node is not a cut node");
      if (b < 0 || b >= static_cast<int>(r.blocks.size())) fail("tree edge references an unknown block");
      if (!std::binary_search(r.blocks[b].nodes.begin(), r.blocks[b].nodes.end(), c)) {
        fail("tree edge joins a cut node to a block not containing it");
      }
      t.edges.emplace_back(c, b);
    }
    const auto& jc = j.at("subtree_codes");
    if (!jc.is_array()) fail("subtree_codes must be an array");
    for (const auto& c : jc) {
      object(c, "subtree code", {"node", "code"});
      if (!c.at("code").is_string()) fail("subtree code must be a string");
      const int v = integer(c.at("node"), "subtree_code.node");
      if (!std::binary_search(r.cut_nodes.begin(), r.cut_nodes.end(), v)) fail("subtree code for a non-cut node");
      t.subtree_codes.emplace_back(v, c.at("code").get<std::string>());
    }
    return t;
  }

  static void check_membership(const DecompositionRecord& r) {
    std::vector<std::vector<int>> sigma(r.node_count), pi(r.node_count);
    for (const auto& b : r.blocks) {
      for (int v : b.nodes) pi[v].push_back(b.id);
      if (!b.spqr) continue;
      for (const auto& n : b.spqr->nodes) {
        for (int v : n.nodes) sigma[v].push_back(n.id);
      }
    }
    if (sigma != r.sigma || pi != r.pi) fail("membership lists disagree with blocks and skeletons");
  }

  int n_ = 0;
};

}  // namespace detail

// Strict parse: unknown or missing fields and broken references raise
// ValidationError.
inline DecompositionRecord record_from_json(const nlohmann::json& j) { return detail::RecordReader().read(j); }

inline DecompositionRecord parse_record(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  return record_from_json(j);
}

inline std::string serialize_record(const DecompositionRecord& r) { return to_json(r).dump(); }

// Rebuilds the graph from the record's skeletons alone: the real skeleton
// edges of every SPQR node, unioned over blocks, plus the stated node
// count and colors.
inline Graph reconstruct(const DecompositionRecord& r) {
  std::vector<Edge> edges;
  for (const auto& b : r.blocks) {
    if (!b.spqr) continue;
    SpqrTree t;
    const int base = b.spqr->nodes.front().id;
    for (const auto& n : b.spqr->nodes) {
      SpqrNode sn;
      sn.id = n.id - base;
      sn.kind = n.kind;
      sn.skeleton.nodes = n.nodes;
      for (const auto& e : n.edges) sn.skeleton.edges.push_back(SkeletonEdge{e.u, e.v, e.is_virtual, e.pair});
      t.nodes.push_back(std::move(sn));
    }
    for (const auto& te : b.spqr->tree_edges) {
      t.tree_edges.push_back(SpqrTreeEdge{te.id, te.a - base, te.edge_a, te.b - base, te.edge_b});
    }
    Block glued = glue(t);
    if (glued.edges != b.edges) throw ValidationError("glued skeletons do not reproduce block " + std::to_string(b.id));
    edges.insert(edges.end(), glued.edges.begin(), glued.edges.end());
  }
  return Graph(r.node_count, std::move(edges), r.colors);
}

}  // namespace plancanon
