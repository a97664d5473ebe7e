#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sepcode/bits.hpp"

namespace sepcode {

using NodeId = std::uint32_t;
using DartId = std::uint32_t;
inline constexpr NodeId kNoNode = ~NodeId(0);

/// A simple graph with a rotation system on an orientable surface.
///
/// Node ids double as labels. The darts leaving node v occupy the contiguous
/// range [first_dart(v), first_dart(v) + degree(v)) in clockwise order; each
/// dart knows its twin. Instances are immutable.
class EmbeddedGraph {
public:
  EmbeddedGraph() = default;

  /// Builds from per-node clockwise neighbor lists. Throws InvalidEmbedding if
  /// the lists are not symmetric, contain self-loops or repeated neighbors.
  static EmbeddedGraph from_rotations(const std::vector<std::vector<NodeId>> &rotations);
  /// Same, from concatenated rotations: node v owns heads[offsets[v] .. offsets[v+1]).
  static EmbeddedGraph from_flat(std::vector<std::uint32_t> offsets, std::vector<NodeId> heads);

  [[nodiscard]] std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t dart_count() const noexcept { return heads_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return heads_.size() / 2; }

  [[nodiscard]] std::uint32_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  [[nodiscard]] DartId first_dart(NodeId v) const noexcept { return offsets_[v]; }
  [[nodiscard]] NodeId head(DartId d) const noexcept { return heads_[d]; }
  [[nodiscard]] NodeId tail(DartId d) const noexcept { return tails_[d]; }
  [[nodiscard]] DartId twin(DartId d) const noexcept { return twins_[d]; }
  [[nodiscard]] DartId next_cw(DartId d) const noexcept {
    const NodeId v = tails_[d];
    return d + 1 == offsets_[v + 1] ? offsets_[v] : d + 1;
  }
  [[nodiscard]] DartId prev_cw(DartId d) const noexcept {
    const NodeId v = tails_[d];
    return d == offsets_[v] ? offsets_[v + 1] - 1 : d - 1;
  }
  /// Neighbors of v in clockwise order.
  [[nodiscard]] std::span<const NodeId> rotation(NodeId v) const noexcept {
    return {heads_.data() + offsets_[v], degree(v)};
  }
  /// Dart from u to v, or kNoNode when not adjacent. O(deg u).
  [[nodiscard]] DartId find_dart(NodeId u, NodeId v) const noexcept;
  [[nodiscard]] bool adjacent(NodeId u, NodeId v) const noexcept;

  [[nodiscard]] std::vector<std::vector<NodeId>> rotations() const;
  [[nodiscard]] std::uint32_t max_degree() const noexcept;

private:
  std::vector<std::uint32_t> offsets_;
  std::vector<NodeId> heads_;
  std::vector<NodeId> tails_;
  std::vector<DartId> twins_;
};

/// Sorted node ids of a host graph.
using NodeSet = std::vector<NodeId>;

/// A subgraph with compact ids; to_host[i] is the host id of local node i,
/// listed in ascending host order.
struct Subgraph {
  EmbeddedGraph graph;
  std::vector<NodeId> to_host;
};

/// Face walks as dart sequences, using the successor d -> next_cw(twin(d)).
/// Isolated nodes have no darts and get no entry here.
[[nodiscard]] std::vector<std::vector<DartId>> faces(const EmbeddedGraph &g);
/// Face count including one face per isolated node.
[[nodiscard]] std::size_t face_count(const EmbeddedGraph &g);

/// Connected components as a component id per node; returns the component count.
std::size_t connected_components(const EmbeddedGraph &g, std::vector<std::uint32_t> &component);
[[nodiscard]] bool is_connected(const EmbeddedGraph &g);

/// Sum of per-component genera from Euler's formula.
[[nodiscard]] std::size_t genus(const EmbeddedGraph &g);

/// Adds edges, never nodes, until every face is a triangle on three distinct
/// nodes. Requires a connected graph with at least 3 nodes; throws
/// CannotTriangulate if some face admits no chord (possible only off the sphere).
[[nodiscard]] EmbeddedGraph triangulate(const EmbeddedGraph &g);
[[nodiscard]] bool is_triangulation(const EmbeddedGraph &g);

/// G[V]: nodes V, edges with both ends in V, rotation restricted.
[[nodiscard]] Subgraph induced(const EmbeddedGraph &g, std::span<const NodeId> nodes);
/// G(V): nodes V + Nbr(V), edges with at least one end in V.
[[nodiscard]] Subgraph boundary_subgraph(const EmbeddedGraph &g, std::span<const NodeId> nodes);
/// Nbr_G(V), sorted.
[[nodiscard]] NodeSet neighborhood(const EmbeddedGraph &g, std::span<const NodeId> nodes);
/// G minus V, as an induced subgraph on the complement.
[[nodiscard]] Subgraph remove_nodes(const EmbeddedGraph &g, std::span<const NodeId> nodes);

/// Same node count and, at every node, the same clockwise rotation up to cyclic shift.
[[nodiscard]] bool labeled_equal(const EmbeddedGraph &a, const EmbeddedGraph &b);

/// Renames node v to new_label[v].
[[nodiscard]] EmbeddedGraph relabel(const EmbeddedGraph &g, std::span<const NodeId> new_label);
/// Places the graphs side by side, shifting ids of later graphs.
[[nodiscard]] EmbeddedGraph disjoint_union(std::span<const EmbeddedGraph> parts);

/// Canonical form of an oriented embedded graph.
///
/// For a connected graph the code is the lexicographically least breadth-first
/// traversal over all start darts at minimum-degree nodes: for each node in
/// discovery order, its degree followed by its neighbors' discovery indices in
/// clockwise order from the dart it was reached by. `order[k]` is the node that
/// received canonical label k. A disconnected graph is coded as
/// kDisconnectedTag, the component count, then (size, code) per component
/// sorted by (size, code); labels are assigned component by component in
/// that order.
inline constexpr std::uint32_t kDisconnectedTag = ~std::uint32_t(0);

struct CanonicalForm {
  std::vector<std::uint32_t> code;
  std::vector<NodeId> order;
};

[[nodiscard]] CanonicalForm canonical_form(const EmbeddedGraph &g);
[[nodiscard]] BitString canonical_code(const EmbeddedGraph &g);
/// Inverse of a connected canonical code: the graph with canonical labels.
[[nodiscard]] EmbeddedGraph graph_from_code(std::span<const std::uint32_t> code);

} // namespace sepcode
