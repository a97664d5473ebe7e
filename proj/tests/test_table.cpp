#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>

#include "sepcode/generators.hpp"
#include "sepcode/table.hpp"

#include "oracles.hpp"

using namespace sepcode;

namespace {

using oracle::Rot;

EmbeddedGraph to_graph(const Rot &rot) { return EmbeddedGraph::from_rotations(rot); }

EmbeddedGraph mirror(const EmbeddedGraph &g) {
  auto rot = g.rotations();
  for (auto &r : rot) {
    std::reverse(r.begin(), r.end());
  }
  return EmbeddedGraph::from_rotations(rot);
}

} // namespace

class TableOracle : public ::testing::TestWithParam<std::string> {};

TEST_P(TableOracle, CountsAndMembersMatchBruteForce) {
  const GraphClass &cls = graph_class(GetParam());
  const ClassTable table = build_table(cls, 5);
  for (std::size_t m = 1; m <= 5; ++m) {
    const oracle::TableCount expected = oracle::brute_force_table(m, cls.name);
    EXPECT_EQ(table.count(m), expected.count) << cls.name << " m=" << m;
    EXPECT_EQ(table.width(m), expected.count <= 1 ? 0U : unsigned(std::ceil(std::log2(double(expected.count)))));
    for (const Rot &rep : expected.representatives) {
      const CanonicalForm form = canonical_form(to_graph(rep));
      EXPECT_TRUE(table.index_of(m, form.code).has_value()) << cls.name << " m=" << m;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Classes, TableOracle,
                         ::testing::Values("planar", "plane-connected", "forest5", "triangulation"),
                         [](const auto &info) {
                           std::string s = info.param;
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(Table, SmallestSizes) {
  const ClassTable planar = build_table(graph_class("planar"), 3);
  EXPECT_EQ(planar.count(1), 1U);
  EXPECT_EQ(planar.width(1), 0U);
  EXPECT_EQ(planar.count(2), 1U);
  EXPECT_EQ(planar.count(3), 2U);
  const ClassTable tri = build_table(graph_class("triangulation"), 4);
  EXPECT_EQ(tri.count(1), 0U);
  EXPECT_EQ(tri.count(4), 1U);
  EXPECT_TRUE(labeled_equal(decode_optcode(tri, 4, BitString()), decode_optcode(tri, 4, BitString())));
  EXPECT_EQ(decode_optcode(tri, 4, BitString()).edge_count(), 6U);
}

TEST(Table, TriangulationCountsAgreeWithUnorientedSequence) {
  // Triangulations of the sphere up to orientation-reversing isomorphism, n = 4..11.
  const std::vector<std::uint64_t> unoriented = {1, 1, 2, 5, 14, 50, 233, 1249};
  const ClassTable table = build_table(graph_class("triangulation"), 11, 11);
  for (std::size_t m = 4; m <= 11; ++m) {
    std::uint64_t achiral = 0;
    for (std::uint64_t i = 0; i < table.count(m); ++i) {
      const EmbeddedGraph g = decode_optcode(table, m, [&] {
        BitString b;
        b.append_bits(i, table.width(m));
        return b;
      }());
      if (canonical_form(mirror(g)).code == canonical_form(g).code) {
        ++achiral;
      }
    }
    EXPECT_EQ((table.count(m) + achiral) / 2, unoriented[m - 4]) << "m=" << m;
  }
}

TEST(Table, LogCountPerNodeGrowsForTriangulations) {
  const ClassTable table = build_table(graph_class("triangulation"), 12, 12);
  double previous = 0;
  for (std::size_t m = 6; m <= 12; ++m) {
    const double rate = std::log2(double(table.count(m))) / double(m);
    EXPECT_GT(rate, previous);
    EXPECT_LT(rate, std::log2(256.0 / 27.0));
    previous = rate;
  }
}

TEST(Table, OptcodeRoundTripsEveryEntry) {
  const GraphClass &cls = graph_class("planar");
  const ClassTable table = build_table(cls, 6);
  Rng rng(9);
  for (std::size_t m = 1; m <= 6; ++m) {
    for (std::uint64_t i = 0; i < table.count(m); ++i) {
      BitString code;
      code.append_bits(i, table.width(m));
      const EmbeddedGraph g = decode_optcode(table, m, code);
      // Scramble labels, then encode: the labeling must map back onto the entry.
      std::vector<NodeId> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const EmbeddedGraph h = relabel(g, perm);
      const Optcode oc = optcode(table, cls, h);
      EXPECT_EQ(oc.bits, code);
      EXPECT_TRUE(labeled_equal(relabel(h, oc.labeling), g));
    }
  }
}

TEST(Table, Errors) {
  const GraphClass &forest = graph_class("forest5");
  const ClassTable table = build_table(forest, 5);
  EXPECT_THROW((void)optcode(table, forest, cycle_graph(4)), Error);
  try {
    (void)optcode(table, forest, path_graph(6));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
  try {
    (void)optcode(table, forest, cycle_graph(4));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInClass);
  }
  try {
    (void)build_table(forest, 11, 10);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::CapTooLarge);
  }
  EXPECT_THROW((void)graph_class("outerplanar"), Error);
  // Size 5 forests: 3 members in 2 bits, so index 3 is out of range.
  BitString bad;
  bad.append_bits(3, 2);
  try {
    (void)decode_optcode(table, 5, bad);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(Table, RandomCodesDecodeOrFailCleanly) {
  const ClassTable table = build_table(graph_class("planar"), 4);
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    BitString code;
    code.append_bits(rng(), table.width(4));
    try {
      const EmbeddedGraph g = decode_optcode(table, 4, code);
      EXPECT_EQ(g.node_count(), 4U);
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
    }
  }
}

TEST(Table, HereditaryClassesAreClosedUnderSubgraphs) {
  Rng rng(2);
  for (const char *name : {"planar", "forest5"}) {
    const GraphClass &cls = graph_class(name);
    for (int t = 0; t < 50; ++t) {
      const EmbeddedGraph g = std::string(name) == "planar" ? random_connected_planar(30, 0.5, rng)
                                                            : random_tree(30, 5, rng);
      ASSERT_TRUE(cls.member(g));
      NodeSet keep;
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (rng() % 3 != 0) {
          keep.push_back(v);
        }
      }
      EXPECT_TRUE(cls.member(induced(g, keep).graph));
    }
  }
}

TEST(Table, SerializationIsExactAndDeterministic) {
  for (const auto &name : class_names()) {
    const GraphClass &cls = graph_class(name);
    const ClassTable a = build_table(cls, 6);
    const ClassTable b = build_table(cls, 6);
    const BitString blob = serialize_table(a);
    EXPECT_EQ(blob, serialize_table(b));
    EXPECT_TRUE(deserialize_table(blob) == a);
  }
  const ClassTable empty = build_table(graph_class("planar"), 0);
  const BitString header = serialize_table(empty);
  const ClassTable back = deserialize_table(header);
  EXPECT_EQ(back.cap(), 0U);
  EXPECT_EQ(back.class_name(), "planar");
}

TEST(Table, DamagedBlobsAreRejected) {
  const BitString blob = serialize_table(build_table(graph_class("planar"), 5));
  Rng rng(6);
  for (int i = 0; i < 2000; ++i) {
    BitString damaged = blob;
    const std::size_t cut = rng() % blob.size();
    damaged = blob.slice(0, cut);
    EXPECT_THROW((void)deserialize_table(damaged), Error);
    BitString flipped;
    const std::size_t pos = rng() % blob.size();
    flipped.append(blob.slice(0, pos));
    flipped.push_back(!blob[pos]);
    flipped.append(blob.slice(pos + 1, blob.size() - pos - 1));
    try {
      (void)deserialize_table(flipped);
    } catch (const Error &) {
    }
  }
}

TEST(Table, CacheDirectoryIsUsed) {
  const auto dir = std::filesystem::temp_directory_path() / "sepcode-table-cache-test";
  std::filesystem::remove_all(dir);
  setenv("SEPCODE_CACHE_DIR", dir.c_str(), 1);
  const GraphClass &cls = graph_class("forest5");
  const ClassTable &t = cached_table(cls, 7);
  EXPECT_TRUE(std::filesystem::exists(dir / "forest5-7.sctb"));
  EXPECT_EQ(&t, &cached_table(cls, 7));
  EXPECT_TRUE(t == build_table(cls, 7));
  unsetenv("SEPCODE_CACHE_DIR");
  std::filesystem::remove_all(dir);
}
