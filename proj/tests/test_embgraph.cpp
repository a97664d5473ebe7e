#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sepcode/embgraph.hpp"

using namespace sepcode;

namespace {

EmbeddedGraph k4() { return EmbeddedGraph::from_rotations({{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}); }

// Rotation i: i+1, i+3, i+2, i+6, i+4, i+5 (mod 7) embeds K7 on the torus.
EmbeddedGraph k7_torus() {
  std::vector<std::vector<NodeId>> rot(7);
  for (NodeId i = 0; i < 7; ++i) {
    for (NodeId s : {1U, 3U, 2U, 6U, 4U, 5U}) {
      rot[i].push_back((i + s) % 7);
    }
  }
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph random_tree(std::mt19937_64 &rng, std::size_t n) {
  std::vector<std::vector<NodeId>> rot(n);
  for (NodeId v = 1; v < n; ++v) {
    const NodeId p = static_cast<NodeId>(rng() % v);
    rot[v].push_back(p);
    rot[p].push_back(v);
  }
  for (auto &r : rot) {
    std::shuffle(r.begin(), r.end(), rng);
  }
  return EmbeddedGraph::from_rotations(rot);
}

bool cyclic_subsequence(std::span<const NodeId> small, std::span<const NodeId> big) {
  if (small.empty()) {
    return true;
  }
  auto it = std::find(big.begin(), big.end(), small[0]);
  if (it == big.end()) {
    return false;
  }
  std::size_t j = static_cast<std::size_t>(it - big.begin());
  std::size_t matched = 0;
  for (std::size_t step = 0; step < big.size() && matched < small.size(); ++step) {
    if (big[(j + step) % big.size()] == small[matched]) {
      ++matched;
    }
  }
  return matched == small.size();
}

std::vector<NodeId> random_perm(std::mt19937_64 &rng, std::size_t n) {
  std::vector<NodeId> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

} // namespace

TEST(EmbeddedGraph, RejectsBadRotations) {
  EXPECT_THROW(EmbeddedGraph::from_rotations({{1}, {}}), Error);
  EXPECT_THROW(EmbeddedGraph::from_rotations({{0}}), Error);
  EXPECT_THROW(EmbeddedGraph::from_rotations({{1, 1}, {0, 0}}), Error);
  EXPECT_THROW(EmbeddedGraph::from_rotations({{5}, {0}}), Error);
}

TEST(EmbeddedGraph, FacesAndGenus) {
  const auto g = k4();
  EXPECT_EQ(g.edge_count(), 6U);
  EXPECT_EQ(face_count(g), 4U);
  EXPECT_EQ(genus(g), 0U);
  for (const auto &f : faces(g)) {
    EXPECT_EQ(f.size(), 3U);
  }
  EXPECT_TRUE(is_triangulation(g));

  const auto t = k7_torus();
  EXPECT_EQ(t.edge_count(), 21U);
  EXPECT_EQ(face_count(t), 14U);
  EXPECT_EQ(genus(t), 1U);
  EXPECT_TRUE(is_triangulation(t));

  // Isolated nodes add one face each and leave the genus unchanged.
  const auto iso = EmbeddedGraph::from_rotations({{}, {}, {}});
  EXPECT_EQ(face_count(iso), 3U);
  EXPECT_EQ(genus(iso), 0U);
  std::vector<EmbeddedGraph> both = {t, k4()};
  EXPECT_EQ(genus(disjoint_union(both)), 1U);
}

TEST(Triangulate, RandomTreesBecomeTriangulations) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng() % 60;
    const auto g = random_tree(rng, n);
    const auto t = triangulate(g);
    ASSERT_TRUE(is_triangulation(t));
    EXPECT_EQ(t.edge_count(), 3 * n - 6);
    EXPECT_EQ(genus(t), 0U);
    for (NodeId v = 0; v < n; ++v) {
      EXPECT_TRUE(cyclic_subsequence(g.rotation(v), t.rotation(v)));
    }
  }
}

TEST(Triangulate, LargePathIsFast) {
  const std::size_t n = 200000;
  std::vector<std::vector<NodeId>> rot(n);
  for (NodeId v = 0; v + 1 < n; ++v) {
    rot[v].push_back(v + 1);
    rot[v + 1].push_back(v);
  }
  const auto t = triangulate(EmbeddedGraph::from_rotations(rot));
  EXPECT_EQ(t.edge_count(), 3 * n - 6);
  EXPECT_TRUE(is_triangulation(t));
}

TEST(Triangulate, Preconditions) {
  EXPECT_THROW((void)triangulate(EmbeddedGraph::from_rotations({{1}, {0}})), Error);
  EXPECT_THROW((void)triangulate(EmbeddedGraph::from_rotations({{1}, {0}, {}})), Error);
}

TEST(Subgraphs, InducedAndBoundary) {
  const auto g = k4();
  const std::vector<NodeId> v = {0, 2};
  const auto ind = induced(g, v);
  EXPECT_EQ(ind.graph.node_count(), 2U);
  EXPECT_EQ(ind.graph.edge_count(), 1U);
  const auto b = boundary_subgraph(g, std::vector<NodeId>{0});
  EXPECT_EQ(b.graph.node_count(), 4U);
  EXPECT_EQ(b.graph.edge_count(), 3U);
  EXPECT_EQ(neighborhood(g, std::vector<NodeId>{0}), (NodeSet{1, 2, 3}));
  const auto r = remove_nodes(g, std::vector<NodeId>{3});
  EXPECT_EQ(r.to_host, (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(r.graph.edge_count(), 3U);
}

TEST(LabeledEqual, CyclicShiftsAndRelabel) {
  const auto g = k4();
  const auto h = EmbeddedGraph::from_rotations({{2, 3, 1}, {3, 2, 0}, {1, 3, 0}, {2, 1, 0}});
  EXPECT_TRUE(labeled_equal(g, h));
  const auto mirror = EmbeddedGraph::from_rotations({{3, 2, 1}, {2, 3, 0}, {3, 1, 0}, {1, 2, 0}});
  EXPECT_FALSE(labeled_equal(g, mirror));
  std::mt19937_64 rng(2);
  const auto p = random_perm(rng, 4);
  std::vector<NodeId> inv(4);
  for (NodeId i = 0; i < 4; ++i) {
    inv[p[i]] = i;
  }
  EXPECT_TRUE(labeled_equal(relabel(relabel(g, p), inv), g));
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng() % 25;
    auto g = triangulate(random_tree(rng, n));
    if (trial % 2 == 0) {
      g = random_tree(rng, n);
    }
    const auto form = canonical_form(g);
    const auto h = relabel(g, random_perm(rng, n));
    EXPECT_EQ(canonical_form(h).code, form.code);
    // The order is a relabeling onto the graph decoded from the code.
    std::vector<NodeId> label(n);
    for (NodeId k = 0; k < n; ++k) {
      label[form.order[k]] = k;
    }
    EXPECT_TRUE(labeled_equal(relabel(g, label), graph_from_code(form.code)));
  }
}

TEST(Canonical, DistinguishesMirrorOfChiralMap) {
  // A plane tree whose mirror image is not orientation-preserving isomorphic.
  const auto g = EmbeddedGraph::from_rotations({{1, 2, 3}, {0, 4}, {0}, {0, 5, 6}, {1}, {3}, {3}});
  std::vector<std::vector<NodeId>> rev = g.rotations();
  for (auto &r : rev) {
    std::reverse(r.begin(), r.end());
  }
  const auto mirror = EmbeddedGraph::from_rotations(rev);
  EXPECT_NE(canonical_form(g).code, canonical_form(mirror).code);
}

TEST(Canonical, DisconnectedComponentsSorted) {
  std::vector<EmbeddedGraph> a = {k4(), EmbeddedGraph::from_rotations({{1}, {0}})};
  std::vector<EmbeddedGraph> b = {EmbeddedGraph::from_rotations({{1}, {0}}), k4()};
  const auto fa = canonical_form(disjoint_union(a));
  const auto fb = canonical_form(disjoint_union(b));
  EXPECT_EQ(fa.code, fb.code);
  EXPECT_EQ(fa.code[0], kDisconnectedTag);
  EXPECT_EQ(fa.code[1], 2U);
  EXPECT_EQ(fa.order.size(), 6U);
}
