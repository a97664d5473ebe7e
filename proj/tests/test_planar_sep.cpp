#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sepcode/constants.hpp"
#include "sepcode/generators.hpp"
#include "sepcode/planar_sep.hpp"

#include "oracles.hpp"

using namespace sepcode;

namespace {

void check_planar_separator(const EmbeddedGraph &g) {
  const Separator sep = planar_separator(g);
  std::vector<NodeId> all(g.node_count());
  for (NodeId v = 0; v < all.size(); ++v) {
    all[v] = v;
  }
  EXPECT_EQ(oracle::separator_violation(g, all, sep.separator, {&sep.side_a, &sep.side_b}, kSeparatorConstant), "");
}

void check_tree(const EmbeddedGraph &g, const SeparatorTree &tree) {
  EXPECT_EQ(oracle::tree_violation(g, tree, kSeparatorConstant), "");
}

} // namespace

TEST(PlanarSeparator, PathOfThree) {
  const Separator sep = planar_separator(path_graph(3));
  EXPECT_EQ(sep.separator, (NodeSet{1}));
  EXPECT_EQ(sep.side_a.size(), 1U);
  EXPECT_EQ(sep.side_b.size(), 1U);
}

TEST(PlanarSeparator, PathsUseOneNode) {
  for (std::size_t n = 3; n <= 100; ++n) {
    const auto g = path_graph(n);
    EXPECT_EQ(planar_separator(g).separator.size(), 1U) << n;
    check_planar_separator(g);
  }
}

TEST(PlanarSeparator, Grid) {
  const auto g = grid_graph(10, 10);
  const Separator sep = planar_separator(g);
  EXPECT_LE(sep.separator.size(), 40U);
  check_planar_separator(g);
}

TEST(PlanarSeparator, RandomFamilies) {
  Rng rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 1500;
    switch (trial % 4) {
    case 0: check_planar_separator(n >= 3 ? random_plane_triangulation(n, rng) : path_graph(n)); break;
    case 1: check_planar_separator(random_connected_planar(n, 0.3, rng)); break;
    case 2: check_planar_separator(random_tree(n, 5, rng)); break;
    default: check_planar_separator(random_forest(n, 1 + rng() % 8, 5, rng)); break;
    }
  }
}

TEST(PlanarSeparator, RejectsTorus) {
  try {
    (void)planar_separator(k7_torus());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPlanar);
  }
}

TEST(Decomposition, SmallCases) {
  const auto single = build_decomposition(path_graph(1));
  ASSERT_EQ(single.vertices.size(), 1U);
  EXPECT_EQ(single.vertices[0].nodes, (NodeSet{0}));
  const auto tri = cycle_graph(3);
  const auto tree = build_decomposition(tri);
  EXPECT_LE(tree.vertices[0].nodes.size(), 2U);
  check_tree(tri, tree);
}

TEST(Decomposition, RandomPlanarInvariants) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % (trial < 150 ? 300 : 2000);
    const auto g = trial % 2 == 0 && n >= 3 ? random_plane_triangulation(n, rng) : random_connected_planar(n, 0.2, rng);
    check_tree(g, build_decomposition(g));
  }
}

TEST(Decomposition, HeavyNodesLeaveSmallComponents) {
  Rng rng(29);
  const auto g = random_plane_triangulation(3000, rng);
  const auto tree = build_decomposition(g);
  for (std::size_t t : {16U, 81U, 256U}) {
    const NodeSet heavy = heavy_separator_nodes(tree, t);
    const auto rest = remove_nodes(g, heavy);
    std::vector<std::uint32_t> comp;
    const std::size_t k = connected_components(rest.graph, comp);
    std::vector<std::size_t> sizes(k, 0);
    for (auto c : comp) {
      ++sizes[c];
    }
    for (auto s : sizes) {
      EXPECT_LE(s, t);
    }
  }
}

TEST(Planarize, PlanarGivesEmpty) {
  Rng rng(31);
  EXPECT_TRUE(planarize(random_plane_triangulation(200, rng)).empty());
}

TEST(Planarize, TorusGraphs) {
  const auto k7 = k7_torus();
  EXPECT_EQ(genus(remove_nodes(k7, planarize(k7)).graph), 0U);
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_torus_triangulation(7 + rng() % 2000, rng);
    ASSERT_EQ(genus(g), 1U);
    const NodeSet v = planarize(g);
    EXPECT_FALSE(v.empty());
    EXPECT_EQ(genus(remove_nodes(g, v).graph), 0U);
  }
}

TEST(Planarize, K5OnTheTorus) {
  // Search the 6^5 rotation systems of K5 for one of genus 1.
  std::vector<std::vector<std::vector<NodeId>>> choices(5);
  for (NodeId v = 0; v < 5; ++v) {
    std::vector<NodeId> others;
    for (NodeId w = 0; w < 5; ++w) {
      if (w != v) others.push_back(w);
    }
    // Fix the first neighbor; permute the remaining three.
    std::vector<NodeId> tail(others.begin() + 1, others.end());
    do {
      std::vector<NodeId> r = {others[0]};
      r.insert(r.end(), tail.begin(), tail.end());
      choices[v].push_back(r);
    } while (std::next_permutation(tail.begin(), tail.end()));
  }
  bool found = false;
  for (int code = 0; code < 7776 && !found; ++code) {
    std::vector<std::vector<NodeId>> rot(5);
    int c = code;
    for (NodeId v = 0; v < 5; ++v) {
      rot[v] = choices[v][c % 6];
      c /= 6;
    }
    const auto g = EmbeddedGraph::from_rotations(rot);
    if (genus(g) == 1) {
      found = true;
      const NodeSet v = planarize(g);
      EXPECT_LE(v.size(), 5U);
      EXPECT_EQ(genus(remove_nodes(g, v).graph), 0U);
    }
  }
  EXPECT_TRUE(found);
}
