#include <gtest/gtest.h>

#include "plancanon/iso.hpp"
#include "support.hpp"

namespace plancanon {
namespace {

using testing::hexagon;
using testing::two_triangles;

TEST(IsIsomorphic, RelabeledCopies) {
  Rng rng(71);
  for (int i = 0; i < 100; ++i) {
    const Graph g = testing::random_planar_in(rng, 1, 40);
    EXPECT_TRUE(is_isomorphic(g, scramble(g, rng.next()).first));
  }
}

TEST(IsIsomorphic, OneWlPair) { EXPECT_FALSE(is_isomorphic(two_triangles(), hexagon())); }

TEST(IsIsomorphic, SizeMismatchStillRejectsNonPlanar) {
  EXPECT_FALSE(is_isomorphic(Graph(2), Graph(3)));
  EXPECT_THROW(is_isomorphic(testing::k5(), Graph(3)), NotPlanarError);
  EXPECT_THROW(is_isomorphic(hexagon(), testing::k33()), NotPlanarError);
}

TEST(IsIsomorphic, AgreesWithBruteForceOnAllPairsUpToSixNodes) {
  const auto reps = testing::connected_planar_representatives(6);
  Rng rng(72);
  int pairs = 0;
  for (const auto& layer : reps) {
    std::vector<Graph> items;
    for (const auto& g : layer) {
      items.push_back(g);
      items.push_back(scramble(g, rng.next()).first);
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i; j < items.size(); ++j) {
        ASSERT_EQ(is_isomorphic(items[i], items[j]), brute_force_isomorphic(items[i], items[j]))
            << serialize_graph6(items[i]) << " " << serialize_graph6(items[j]);
        ++pairs;
      }
    }
  }
  EXPECT_GT(pairs, 20000);
}

TEST(BruteForce, Basics) {
  EXPECT_TRUE(brute_force_isomorphic(hexagon(), hexagon()));
  EXPECT_FALSE(brute_force_isomorphic(hexagon(), two_triangles()));
  EXPECT_TRUE(brute_force_isomorphic(Graph(0), Graph(0)));
  EXPECT_FALSE(brute_force_isomorphic(Graph(3, {}, {0, 0, 1}), Graph(3, {}, {0, 1, 1})));
  EXPECT_TRUE(brute_force_isomorphic(testing::k33(), scramble(testing::k33(), 3).first));
  EXPECT_THROW(brute_force_isomorphic(Graph(11), Graph(11)), ArgumentError);
  EXPECT_NO_THROW(brute_force_isomorphic(Graph(11), Graph(11), 12));
}

TEST(Wl1, OneWlPairIsIndistinguishable) {
  EXPECT_EQ(wl1_histogram(two_triangles()), wl1_histogram(hexagon()));
  EXPECT_NE(graph_code(two_triangles()), graph_code(hexagon()));
}

TEST(Wl1, RegularGraphsHaveOneClass) {
  for (const Graph& g : {hexagon(), testing::k33(), testing::k5()}) {
    const auto c = wl1_histogram(g);
    EXPECT_EQ(c.rounds, 0);
    EXPECT_EQ(c.histogram, std::vector<int>(g.node_count(), 0));
  }
  for (const Graph& g : gen_p3r()) EXPECT_EQ(wl1_histogram(g).rounds, 0);
}

TEST(Wl1, StableColoringOfAPath) {
  const auto c = wl1_histogram(Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
  EXPECT_EQ(c.rounds, 2);
  EXPECT_EQ(c.histogram, (std::vector<int>{0, 0, 1, 1, 2}));
}

TEST(Wl1, InvariantUnderRelabeling) {
  Rng rng(73);
  for (int i = 0; i < 50; ++i) {
    const Graph g = testing::random_planar_in(rng, 1, 50);
    EXPECT_EQ(wl1_histogram(g), wl1_histogram(scramble(g, rng.next()).first));
  }
}

TEST(Wl1, SeparatesNonIsomorphicTrees) {
  Rng rng(74);
  int separated = 0;
  for (int i = 0; i < 2000; ++i) {
    const int n = 1 + rng.below(10);
    const Graph a = gen_random_tree(n, rng.next()), b = gen_random_tree(n, rng.next());
    const bool iso = brute_force_isomorphic(a, b);
    EXPECT_EQ(wl1_histogram(a) == wl1_histogram(b), iso);
    separated += !iso;
  }
  EXPECT_GT(separated, 500);
}

}  // namespace
}  // namespace plancanon
