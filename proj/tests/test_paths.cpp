#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "paths.hpp"

using namespace jstlabel;

namespace {

void all_simple_paths(const WeightedDigraph& g, NodeId u, NodeId t, std::vector<NodeId>& stack,
                      std::vector<char>& on, std::vector<WeightedPath>& out) {
  if (u == t) {
    out.push_back({stack, *path_cost(g, stack)});
    return;
  }
  for (const auto& [v, w] : g.out_edges(u)) {
    if (on[v]) continue;
    on[v] = 1;
    stack.push_back(v);
    all_simple_paths(g, v, t, stack, on, out);
    stack.pop_back();
    on[v] = 0;
  }
}

}  // namespace

TEST(Digraph, EdgesStaySortedAndReplace) {
  WeightedDigraph g(4);
  g.set_edge(0, 3, 1.0);
  g.set_edge(0, 1, 2.0);
  g.set_edge(0, 3, 5.0);
  ASSERT_EQ(g.out_edges(0).size(), 2u);
  EXPECT_EQ(g.out_edges(0)[0].first, 1u);
  EXPECT_EQ(*g.edge(0, 3), 5.0);
  EXPECT_FALSE(g.edge(3, 0));
  EXPECT_FALSE(path_cost(g, {0, 2}));
}

TEST(KShortest, SmallDiamond) {
  WeightedDigraph g(4);
  g.set_edge(0, 1, 1.0);
  g.set_edge(0, 2, 2.0);
  g.set_edge(1, 3, 1.0);
  g.set_edge(2, 3, 0.5);
  g.set_edge(1, 2, 0.2);
  auto paths = k_shortest_paths(g, 0, 3, 10);
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(paths[0].nodes, (std::vector<NodeId>{0, 1, 2, 3}));
  EXPECT_DOUBLE_EQ(paths[0].cost, 1.7);
  EXPECT_EQ(paths[1].nodes, (std::vector<NodeId>{0, 1, 3}));
  EXPECT_EQ(paths[2].nodes, (std::vector<NodeId>{0, 2, 3}));
}

TEST(KShortest, NoPath) {
  WeightedDigraph g(3);
  g.set_edge(0, 1, 1.0);
  EXPECT_TRUE(k_shortest_paths(g, 0, 2, 5).empty());
}

TEST(KShortest, MatchesEnumerationOnRandomGraphs) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    std::mt19937 rng(seed);
    const int n = 3 + static_cast<int>(seed % 7);
    WeightedDigraph g(n);
    std::uniform_real_distribution<double> cost(0.1, 3.0);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && rng() % 3 == 0) g.set_edge(u, v, cost(rng));
    std::vector<WeightedPath> all;
    std::vector<NodeId> stack = {0};
    std::vector<char> on(n, 0);
    on[0] = 1;
    all_simple_paths(g, 0, 1, stack, on, all);
    auto got = k_shortest_paths(g, 0, 1, all.size() + 5);
    ASSERT_EQ(got.size(), all.size()) << "seed " << seed;
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.cost < b.cost; });
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i].cost, all[i].cost, 1e-9);
      if (i) EXPECT_LE(got[i - 1].cost, got[i].cost + 1e-12);
    }
  }
}
