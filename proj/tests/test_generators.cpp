#include <gtest/gtest.h>

#include <sstream>

#include "sepcode/generators.hpp"
#include "sepcode/graph_io.hpp"

using namespace sepcode;

TEST(Generators, PlaneTriangulations) {
  Rng rng(1);
  for (std::size_t n : {3U, 4U, 10U, 500U, 5000U}) {
    const auto g = random_plane_triangulation(n, rng);
    EXPECT_EQ(g.node_count(), n);
    EXPECT_EQ(g.edge_count(), 3 * n - 6);
    EXPECT_EQ(genus(g), 0U);
    EXPECT_TRUE(is_triangulation(g));
  }
}

TEST(Generators, TorusTriangulations) {
  Rng rng(2);
  for (std::size_t n : {7U, 8U, 100U, 3000U}) {
    const auto g = random_torus_triangulation(n, rng);
    EXPECT_EQ(g.edge_count(), 3 * n);
    EXPECT_EQ(genus(g), 1U);
    EXPECT_TRUE(is_triangulation(g));
  }
}

TEST(Generators, TreesAndPlanarGraphs) {
  Rng rng(3);
  const auto t = random_tree(1000, 5, rng);
  EXPECT_EQ(t.edge_count(), 999U);
  EXPECT_LE(t.max_degree(), 5U);
  EXPECT_TRUE(is_connected(t));
  const auto f = random_forest(1000, 7, 5, rng);
  std::vector<std::uint32_t> comp;
  EXPECT_EQ(connected_components(f, comp), 7U);
  EXPECT_EQ(f.edge_count(), 993U);
  const auto p = random_connected_planar(1000, 0.5, rng);
  EXPECT_TRUE(is_connected(p));
  EXPECT_EQ(genus(p), 0U);
  EXPECT_EQ(genus(grid_graph(7, 9)), 0U);
  EXPECT_EQ(grid_graph(7, 9).edge_count(), 6U * 9 + 7 * 8);
}

TEST(GraphIo, RoundTripAndErrors) {
  Rng rng(4);
  const auto g = random_torus_triangulation(50, rng);
  std::stringstream ss;
  write_graph(ss, g);
  const auto h = read_graph(ss);
  EXPECT_TRUE(labeled_equal(g, h));

  std::istringstream bad_genus("3 1\n1 2\n2 0\n0 1\n");
  EXPECT_THROW((void)read_graph(bad_genus), Error);
  std::istringstream bad_token("2 0\n1 x\n0\n");
  EXPECT_THROW((void)read_graph(bad_token), Error);
  std::istringstream short_input("3 0\n1\n");
  EXPECT_THROW((void)read_graph(short_input), Error);
}
