#pragma once

#include <utility>
#include <vector>

#include "sepcode/bits.hpp"
#include "sepcode/embgraph.hpp"

namespace sepcode {

using Edge = std::pair<NodeId, NodeId>;

/// A part completed into a plane triangulation on the same nodes.
struct Patch {
  EmbeddedGraph completed;
  /// Edges of `completed` missing from the part, as (min, max) pairs in ascending order.
  std::vector<Edge> fix;
};

/// Completes `part` by triangulating `closure`, a supergraph on the same node
/// ids whose rotations restrict to those of `part`. When the closure is not
/// plane the part itself is triangulated. Throws NotPatchable when the part
/// is not plane, is disconnected or has fewer than three nodes.
[[nodiscard]] Patch complete(const EmbeddedGraph &part, const EmbeddedGraph &closure);
[[nodiscard]] Patch complete(const EmbeddedGraph &part);

/// Deletes the fix edges; the inverse of complete.
[[nodiscard]] EmbeddedGraph apply_fix(const EmbeddedGraph &completed, const std::vector<Edge> &fix);

/// gamma(count) followed by each edge's index among the edges of `completed`
/// sorted by (min, max), in ceil(log2 |E|) bits.
[[nodiscard]] BitString encode_fix(const EmbeddedGraph &completed, const std::vector<Edge> &fix);
[[nodiscard]] std::vector<Edge> decode_fix(const EmbeddedGraph &completed, BitReader &in);

} // namespace sepcode
