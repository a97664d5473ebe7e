#pragma once

#include <vector>

#include "sepcode/bits.hpp"
#include "sepcode/embgraph.hpp"
#include "sepcode/separation.hpp"

namespace sepcode {

/// labeling[x] is the label of local node x of a part graph.
using Labeling = std::vector<NodeId>;

/// G(V_i) for i = 1..p, as subgraphs of g with local ids in ascending host order.
[[nodiscard]] std::vector<Subgraph> part_graphs(const EmbeddedGraph &g, const Separation &s);

/// Coarse labelings from fine ones. Within G(U_j), the nodes in no fine part
/// (W_j) come first in ascending host order; the nodes of fine parts follow,
/// ordered by (part index, fine label). Throws NotRefinement.
[[nodiscard]] std::vector<Labeling> lift_labelings(const EmbeddedGraph &g, const Separation &fine,
                                                   const Separation &coarse,
                                                   const std::vector<Labeling> &fine_labels);

/// Per coarse part j, with W_j labelled 0..|W_j|-1:
///   rec1[j]: gamma(|W_j|), then per W node w the edges to larger W labels:
///            gamma(count) and each neighbour minus w + 1 in ceil(log2(|W_j| - w - 1)) bits;
///   rec2[j]: per fine part, its boundary nodes (a mask over fine labels, or a
///            gamma-counted list, flagged by one bit) and their W labels;
///   rec3[j]: per W node, its rotation as a walk over its neighbours. The
///            neighbours are enumerated as W neighbours by label, then one cyclic
///            run per fine part starting at its smallest label. A step costs one
///            bit when it follows the run, otherwise the rank among unvisited ones.
struct RecString {
  std::vector<BitString> rec1;
  std::vector<BitString> rec2;
  std::vector<BitString> rec3;

  [[nodiscard]] std::size_t part_count() const noexcept { return rec1.size(); }
  /// Three segmented streams, one per component, each split per coarse part.
  [[nodiscard]] BitString serialize() const;
  [[nodiscard]] static RecString parse(const BitString &bits);
};

[[nodiscard]] RecString build_rec(const EmbeddedGraph &g, const Separation &fine, const Separation &coarse,
                                  const std::vector<Labeling> &fine_labels,
                                  const std::vector<Labeling> &coarse_labels);

/// Rebuilds every coarse part graph in coarse labels (node x carries label x)
/// from the fine part graphs in fine labels, grouped by coarse part in order.
[[nodiscard]] std::vector<EmbeddedGraph> apply_rec(const RecString &rec,
                                                   const std::vector<std::vector<EmbeddedGraph>> &fine_by_part);

} // namespace sepcode
