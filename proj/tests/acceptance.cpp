// Acceptance checks; prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "plancanon.hpp"
#include "plancanon/bench.hpp"
#include "plancanon/cli.hpp"
#include "support.hpp"

namespace {

using namespace plancanon;
using namespace plancanon::testing;

struct Result {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Result exhaustive_completeness() {
  const std::vector<int> expected{1, 1, 2, 6, 20, 99, 646};
  std::vector<Graph> layer{Graph(1)};
  std::ostringstream detail;
  bool ok = true;
  Rng rng(7);
  for (int n = 1; n <= 7; ++n) {
    std::vector<Graph> items;
    if (n == 1) {
      items = layer;
    } else {
      for (auto& g : one_node_extensions(layer)) {
        if (is_planar(g)) items.push_back(std::move(g));
      }
    }
    // Relabeled copies so that splits caused by labeling would show up.
    const std::size_t base = items.size();
    for (std::size_t i = 0; i < base; ++i) items.push_back(scramble(items[i], rng.next()).first);
    const auto cls = oracle_classes(items);
    std::vector<Code> codes;
    codes.reserve(items.size());
    for (const auto& g : items) codes.push_back(graph_code(g));
    const auto diff = compare_partitions(codes, cls);
    const int classes = *std::max_element(cls.begin(), cls.end()) + 1;
    detail << "n=" << n << ":" << classes;
    if (diff.merges || diff.splits) detail << "(merges " << diff.merges << ", splits " << diff.splits << ")";
    detail << " ";
    ok = ok && diff.merges == 0 && diff.splits == 0 && classes == expected[n - 1];
    std::vector<Graph> first(items.begin(), items.begin() + static_cast<long>(base));
    std::vector<int> first_cls(cls.begin(), cls.begin() + static_cast<long>(base));
    layer = class_representatives(first, first_cls);
  }
  return {ok, detail.str() + "(expected 1 1 2 6 20 99 646)"};
}

Result colored_completeness() {
  const auto reps = connected_planar_representatives(5);
  Rng rng(11);
  std::vector<Graph> items;
  for (const auto& layer : reps) {
    for (const auto& g : layer) {
      const int n = g.node_count();
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> colors(n);
        for (int v = 0; v < n; ++v) colors[v] = mask >> v & 1;
        items.push_back(with_colors(g, colors));
        items.push_back(scramble(items.back(), rng.next()).first);
      }
    }
  }
  const auto cls = oracle_classes(items);
  std::vector<Code> codes;
  for (const auto& g : items) codes.push_back(graph_code(g));
  const auto diff = compare_partitions(codes, cls);

  int discrepancies = 0, iso_pairs = 0;
  constexpr int kPairs = 10000;
  for (int i = 0; i < kPairs; ++i) {
    Graph g = random_planar_in(rng, 1, 6);
    std::vector<int> colors(g.node_count());
    for (int& c : colors) c = rng.below(3);
    g = with_colors(g, colors);
    Graph h;
    switch (rng.below(4)) {
      case 0:
      case 1:
        h = scramble(g, rng.next()).first;
        break;
      case 2: {
        auto c = colors;
        c[rng.below(g.node_count())] = rng.below(3);
        h = scramble(with_colors(g, c), rng.next()).first;
        break;
      }
      default: {
        Graph other = gen_random_planar(g.node_count(), g.edge_count(), rng.next());
        auto c = colors;
        rng.shuffle(c);
        h = with_colors(other, c);
      }
    }
    const bool expected = brute_force_isomorphic(g, h);
    iso_pairs += expected;
    discrepancies += is_isomorphic(g, h) != expected;
  }
  std::ostringstream detail;
  detail << items.size() << " colored graphs, " << *std::max_element(cls.begin(), cls.end()) + 1
         << " classes, merges " << diff.merges << ", splits " << diff.splits << "; " << kPairs
         << " random pairs (" << iso_pairs << " isomorphic), discrepancies " << discrepancies;
  return {diff.merges == 0 && diff.splits == 0 && discrepancies == 0, detail.str()};
}

Result p3r_count() {
  const auto graphs = gen_p3r();
  bool ok = graphs.size() == 9;
  for (const auto& g : graphs) {
    ok = ok && g.node_count() == 10 && is_planar(g) && is_connected(g);
    for (int v = 0; v < g.node_count(); ++v) ok = ok && g.degree(v) == 3;
  }
  int iso = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) iso += brute_force_isomorphic(graphs[i], graphs[j]);
  }
  ok = ok && iso == 0;
  return {ok, std::to_string(graphs.size()) + " graphs, all cubic planar connected, " + std::to_string(iso) +
                  " isomorphic pairs"};
}

Result wl_separation() {
  const Graph g1 = two_triangles(), g2 = hexagon();
  const bool codes_differ = graph_code(g1) != graph_code(g2);
  const bool wl_equal = wl1_histogram(g1) == wl1_histogram(g2);
  return {codes_differ && wl_equal, std::string("codes differ: ") + (codes_differ ? "yes" : "no") +
                                        ", 1-WL equal: " + (wl_equal ? "yes" : "no")};
}

Result kappa_fixture() {
  const auto k = kappa_of(std::vector<int>{1, 3, 2, 3, 1});
  const bool ok = k == std::vector<int>{1, 2, 3, 2, 1};
  std::string s;
  for (int x : k) s += std::to_string(x) + " ";
  return {ok, "kappa(v1 v3 v2 v3 v1) = " + s};
}

Result invariance_fuzz() {
  Rng rng(2024);
  const auto p3r = gen_p3r();
  constexpr int kCases = 1000;
  int bad = 0;
  for (int i = 0; i < kCases; ++i) {
    Graph g;
    switch (i % 3) {
      case 0: g = random_planar_in(rng, 1, 200); break;
      case 1: g = gen_random_tree(1 + rng.below(500), rng.next()); break;
      default: g = p3r[rng.below(static_cast<int>(p3r.size()))];
    }
    const Graph h = scramble(g, rng.next()).first;
    bad += graph_code(g) != graph_code(h);
  }
  return {bad == 0, std::to_string(kCases - bad) + "/" + std::to_string(kCases) + " codes unchanged"};
}

Result structural_bounds() {
  Rng rng(99);
  constexpr int kGraphs = 1000;
  int block_bad = 0, spqr_bad = 0, cover_bad = 0, length_bad = 0, walks = 0, blocks = 0, sum_over = 0;
  for (int i = 0; i < kGraphs; ++i) {
    const Graph g = random_planar_in(rng, 2, 1000);
    const auto d = decompose(g);
    GraphTrace trace;
    graph_code(d, &trace);
    const auto& cd = d.components.at(0);
    block_bad += static_cast<int>(cd.tree.blocks.size()) > g.node_count() - 1;
    int spqr_total = 0;
    for (std::size_t b = 0; b < cd.blocks.size(); ++b) {
      const auto& tree = cd.blocks[b].spqr;
      const int size = static_cast<int>(cd.tree.blocks[b].nodes.size());
      spqr_total += static_cast<int>(tree.nodes.size());
      spqr_bad += static_cast<int>(tree.nodes.size()) > 2 * size - 2;
      int skeleton_nodes = 0;
      for (const auto& node : tree.nodes) skeleton_nodes += static_cast<int>(node.skeleton.nodes.size());
      sum_over += skeleton_nodes > 2 * size - 2;
      ++blocks;
      const auto& bt = trace.components[0].blocks[b].spqr;
      for (std::size_t x = 0; x < tree.nodes.size(); ++x) {
        if (tree.nodes[x].kind != SpqrKind::kR) continue;
        const auto& sk = tree.nodes[x].skeleton;
        const int v = static_cast<int>(sk.nodes.size()), e = static_cast<int>(sk.edges.size());
        const auto& rs = cd.blocks[b].embeddings[x].rotation;
        for (const Walk& w : {bt.walks[x], weinberg_walk(rs, 0), weinberg_walk(rs, 1, true)}) {
          ++walks;
          std::vector<int> hits(e, 0);
          for (int dart : w.darts) ++hits[dart_edge(dart)];
          cover_bad += std::any_of(hits.begin(), hits.end(), [](int h) { return h != 2; });
          length_bad += static_cast<int>(w.omega.size()) > 4 * (v + e + 1);
        }
      }
    }
    spqr_bad += spqr_total > 2 * g.node_count() - 2;
  }
  std::ostringstream detail;
  detail << kGraphs << " graphs, " << walks << " R walks; violations: blocks " << block_bad << ", spqr " << spqr_bad
         << ", edge cover " << cover_bad << ", walk length " << length_bad
         << "; blocks whose summed skeleton sizes exceed 2|V_B|-2 (not bounded): " << sum_over << "/" << blocks;
  return {block_bad + spqr_bad + cover_bad + length_bad == 0, detail.str()};
}

Result performance() {
  std::ostringstream detail;
  bool ok = true;
  for (auto [n, limit] : {std::pair{10000, 60.0}, std::pair{100000, 7200.0}}) {
    const Graph g = gen_random_planar(n, bench_edge_target(n), derive_seed(1, static_cast<std::uint64_t>(n)));
    const auto t0 = std::chrono::steady_clock::now();
    const Code c = graph_code(g);
    const double s = seconds_since(t0);
    ok = ok && s < limit && !c.empty();
    char buf[96];
    std::snprintf(buf, sizeof buf, "n=%d m=%d: %.1f s (limit %.0f s) ", n, g.edge_count(), s, limit);
    detail << buf;
  }
  return {ok, detail.str()};
}

Result non_planarity() {
  const bool rejected = !is_planar(k5()) && !is_planar(k33());
  std::istringstream in(serialize_graph6(k5()) + "\n" + serialize_graph6(k33()) + "\n");
  std::ostringstream out, err;
  const char* argv[] = {"plancanon", "canon", "-", "--threads", "1"};
  const int rc = cli_main(5, argv, in, out, err);
  const bool diagnosed = rc == 1 && err.str().find("not planar") != std::string::npos;
  return {rejected && diagnosed, std::string("is_planar rejects K5 and K3,3: ") + (rejected ? "yes" : "no") +
                                     "; canon exit " + std::to_string(rc) + ", stderr: " + err.str().substr(0, 60)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"exhaustive completeness (n <= 7)", exhaustive_completeness},
      {"colored completeness", colored_completeness},
      {"P3R count", p3r_count},
      {"1-WL pair separation", wl_separation},
      {"kappa fixture", kappa_fixture},
      {"invariance fuzz", invariance_fuzz},
      {"structural bounds", structural_bounds},
      {"performance", performance},
      {"non-planarity", non_planarity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += !r.pass;
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", seconds_since(t0));
    std::string detail = r.detail;
    while (!detail.empty() && detail.back() == ' ') detail.pop_back();
    std::cout << "criterion " << i + 1 << " " << (r.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << detail << " [" << time << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
