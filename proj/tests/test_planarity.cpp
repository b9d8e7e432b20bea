#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_map>

#include "plancanon/planarity.hpp"
#include "support.hpp"

namespace plancanon {
namespace {

using testing::k33;
using testing::k5;

// Small graph as an adjacency bitmask per node; used by the minor oracle.
struct Small {
  int n = 0;
  std::vector<std::uint32_t> adj;

  int edges() const {
    int m = 0;
    for (auto a : adj) m += __builtin_popcount(a);
    return m / 2;
  }
  std::uint64_t key() const {
    std::uint64_t k = static_cast<std::uint64_t>(n);
    for (int v = 0; v < n; ++v) k = k * 131 + adj[v];
    return k ^ (static_cast<std::uint64_t>(n) << 58);
  }
  Small without_node(int x) const {
    Small s;
    s.n = n - 1;
    for (int v = 0; v < n; ++v) {
      if (v == x) continue;
      std::uint32_t row = 0;
      for (int w = 0, j = 0; w < n; ++w) {
        if (w == x) continue;
        if (adj[v] >> w & 1) row |= 1u << j;
        ++j;
      }
      s.adj.push_back(row);
    }
    return s;
  }
};

// Non-planar iff some sequence of edge deletions, edge contractions and
// node deletions reaches K5 or K3,3 (Wagner). Exhaustive with memo.
class MinorOracle {
 public:
  bool non_planar(const Graph& g) {
    Small s{g.node_count(), std::vector<std::uint32_t>(g.node_count(), 0)};
    for (auto [u, v] : g.edges()) {
      s.adj[u] |= 1u << v;
      s.adj[v] |= 1u << u;
    }
    return search(s);
  }

 private:
  static bool is_k5(const Small& s) { return s.n == 5 && s.edges() == 10; }
  static bool is_k33(const Small& s) {
    if (s.n != 6 || s.edges() != 9) return false;
    for (std::uint32_t side = 1; side < 64; ++side) {
      if (__builtin_popcount(side) != 3) continue;
      bool ok = true;
      for (int v = 0; v < 6 && ok; ++v) {
        const std::uint32_t want = (side >> v & 1) ? (~side & 63u) : side;
        ok = s.adj[v] == want;
      }
      if (ok) return true;
    }
    return false;
  }

  bool search(const Small& s) {
    if (s.n < 5) return false;
    if (s.edges() > 3 * s.n - 6) return true;
    for (int v = 0; v < s.n; ++v) {
      if (__builtin_popcount(s.adj[v]) <= 2) return search(smoothed(s, v));
    }
    if (is_k5(s) || is_k33(s)) return true;
    const auto key = s.key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool found = false;
    for (int u = 0; u < s.n && !found; ++u) {
      for (int v = u + 1; v < s.n && !found; ++v) {
        if (!(s.adj[u] >> v & 1)) continue;
        Small del = s;
        del.adj[u] &= ~(1u << v);
        del.adj[v] &= ~(1u << u);
        found = search(del);
        if (!found) {
          Small con = s;
          con.adj[u] = (con.adj[u] | con.adj[v]) & ~(1u << u) & ~(1u << v);
          for (int w = 0; w < s.n; ++w) {
            if (con.adj[u] >> w & 1) con.adj[w] |= 1u << u;
          }
          found = search(con.without_node(v));
        }
      }
    }
    memo_[key] = found;
    return found;
  }

  // Drops a node of degree <= 2, joining its two neighbours when it has two.
  static Small smoothed(const Small& s, int v) {
    Small t = s;
    if (__builtin_popcount(s.adj[v]) == 2) {
      const int a = __builtin_ctz(s.adj[v]);
      const int b = 31 - __builtin_clz(s.adj[v]);
      t.adj[a] |= 1u << b;
      t.adj[b] |= 1u << a;
    }
    return t.without_node(v);
  }

  std::unordered_map<std::uint64_t, bool> memo_;
};

Graph complete(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) e.emplace_back(u, v);
  }
  return Graph(n, e);
}

Graph octahedron() {
  std::vector<Edge> e;
  for (int v = 1; v < 6; ++v) {
    for (int u = 0; u < v; ++u) {
      if (u / 2 != v / 2) e.emplace_back(u, v);
    }
  }
  return Graph(6, e);
}

TEST(IsPlanar, Classics) {
  EXPECT_TRUE(is_planar(complete(4)));
  EXPECT_FALSE(is_planar(k5()));
  EXPECT_FALSE(is_planar(k33()));
  EXPECT_TRUE(is_planar(octahedron()));
  EXPECT_TRUE(is_planar(Graph(0)));
  EXPECT_TRUE(is_planar(Graph(3)));
}

TEST(IsPlanar, AgreesWithMinorOracleOnAllGraphsUpToSixNodes) {
  MinorOracle oracle;
  int checked = 0, non_planar = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<Edge> slots;
    for (int v = 1; v < n; ++v) {
      for (int u = 0; u < v; ++u) slots.emplace_back(u, v);
    }
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      std::vector<Edge> e;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (mask >> i & 1) e.push_back(slots[i]);
      }
      const Graph g(n, e);
      const bool expected = !oracle.non_planar(g);
      ASSERT_EQ(is_planar(g), expected) << serialize_graph6(g);
      ++checked;
      non_planar += !expected;
    }
  }
  EXPECT_EQ(checked, 1 + 2 + 8 + 64 + 1024 + 32768);
  EXPECT_GT(non_planar, 0);
}

TEST(IsPlanar, AgreesWithMinorOracleOnRandomSevenNodeGraphs) {
  MinorOracle oracle;
  Rng rng(3);
  for (int i = 0; i < 3000; ++i) {
    std::vector<Edge> e;
    const int density = 2 + rng.below(5);
    for (int v = 1; v < 7; ++v) {
      for (int u = 0; u < v; ++u) {
        if (rng.below(8) < density) e.emplace_back(u, v);
      }
    }
    const Graph g(7, e);
    ASSERT_EQ(is_planar(g), !oracle.non_planar(g)) << serialize_graph6(g);
  }
}

TEST(IsPlanar, AcceptedGraphsObeyEulerBound) {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    std::vector<Edge> e;
    const int n = 3 + rng.below(15);
    for (int v = 1; v < n; ++v) {
      for (int u = 0; u < v; ++u) {
        if (rng.below(3) == 0) e.emplace_back(u, v);
      }
    }
    const Graph g(n, e);
    if (is_planar(g)) {
      EXPECT_LE(g.edge_count(), 3 * n - 6);
    }
  }
}

TEST(Embed, FaceCounts) {
  const auto tri = embed(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(tri.face_count(), 2);
  const auto edge = embed(Graph(2, {{0, 1}}));
  EXPECT_EQ(edge.dart_count(), 2);
  EXPECT_EQ(edge.face_count(), 1);
  EXPECT_EQ(edge.euler_characteristic(), 2);
  EXPECT_EQ(embed(octahedron()).face_count(), 8);
  EXPECT_EQ(embed(Graph(1)).euler_characteristic(), 2);
}

TEST(Embed, FacesPartitionDarts) {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const Graph g = testing::random_planar_in(rng, 1, 120);
    const auto rs = embed(g);
    EXPECT_EQ(rs.euler_characteristic(), 2);
    std::vector<int> seen(rs.dart_count(), 0);
    for (const auto& f : rs.faces()) {
      for (int d : f) ++seen[d];
    }
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    for (int d = 0; d < rs.dart_count(); ++d) {
      const Dart x = rs.dart(d);
      EXPECT_EQ(rs.dart(x.reverse_id).tail, x.head);
      EXPECT_EQ(reverse_dart(x.reverse_id), d);
    }
  }
}

TEST(Embed, ScrambledDenseGraphsStayPlanar) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const int n = 5 + rng.below(20);
    Graph g = gen_random_planar(n, 3 * n - 6, rng.next());
    g = scramble(g, rng.next()).first;
    EXPECT_EQ(embed(g).euler_characteristic(), 2);
  }
}

TEST(Embed, RejectsNonPlanarAndDisconnected) {
  try {
    embed(k33());
    FAIL() << "expected NotPlanarError";
  } catch (const NotPlanarError& e) {
    const Graph w(6, e.witness());
    EXPECT_FALSE(is_planar(w));
  }
  EXPECT_THROW(embed(Graph(2)), ArgumentError);
}

TEST(Kuratowski, WitnessIsMinimal) {
  for (const Graph& g : {k5(), k33(), complete(6)}) {
    const auto w = kuratowski_witness(g);
    ASSERT_FALSE(w.empty());
    EXPECT_FALSE(is_planar(g.node_count(), w));
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto fewer = w;
      fewer.erase(fewer.begin() + static_cast<long>(i));
      EXPECT_TRUE(is_planar(g.node_count(), fewer));
    }
  }
}

TEST(Mirror, ReversesRotations) {
  const RotationSystem rs(4, {{0, 1}, {0, 2}, {0, 3}}, {{0, 2, 4}, {1}, {3}, {5}});
  const auto m = mirror(rs);
  EXPECT_EQ(m.rotations()[0], (std::vector<int>{4, 2, 0}));
}

TEST(Mirror, IsAnInvolution) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto rs = embed(testing::random_planar_in(rng, 1, 80));
    EXPECT_EQ(mirror(mirror(rs)), rs);
    EXPECT_EQ(mirror(rs).euler_characteristic(), 2);
  }
}

// The 16 rotation systems of K4: exactly two are planar, and they are the
// embedding found by embed and its mirror image.
TEST(Mirror, K4HasExactlyTwoPlanarEmbeddings) {
  const Graph k4 = complete(4);
  const auto base = embed(k4);
  auto face_structure = [](const RotationSystem& rs) {
    std::set<std::vector<int>> faces;
    for (auto f : rs.faces()) {
      std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
      faces.insert(f);
    }
    return faces;
  };
  std::vector<std::set<std::vector<int>>> planar;
  for (int choice = 0; choice < 16; ++choice) {
    auto rotations = base.rotations();
    for (int v = 0; v < 4; ++v) {
      if (choice >> v & 1) std::swap(rotations[v][1], rotations[v][2]);
    }
    const RotationSystem rs(4, base.edges(), rotations);
    if (rs.euler_characteristic() == 2) planar.push_back(face_structure(rs));
  }
  ASSERT_EQ(planar.size(), 2u);
  const auto a = face_structure(base), b = face_structure(mirror(base));
  EXPECT_NE(a, b);
  EXPECT_TRUE((planar[0] == a && planar[1] == b) || (planar[0] == b && planar[1] == a));
}

}  // namespace
}  // namespace plancanon
