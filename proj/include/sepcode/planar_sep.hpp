#pragma once

#include <cstdint>
#include <vector>

#include "sepcode/embgraph.hpp"

namespace sepcode {

/// Node sets S, A, B partitioning the graph with no edge between A and B.
struct Separator {
  NodeSet separator;
  NodeSet side_a;
  NodeSet side_b;
};

/// Separator with |S| <= kSeparatorConstant * sqrt(n) and max(|A|, |B|) <= 2n/3.
/// Accepts disconnected input. Throws NotPlanar for positive genus.
[[nodiscard]] Separator planar_separator(const EmbeddedGraph &g);

/// Rooted tree whose vertices partition the nodes. Every internal vertex
/// separates the union of its descendants' nodes (its offspring) into the
/// offspring sets of its at most two children. Leaves are singletons.
struct SeparatorTree {
  struct Vertex {
    NodeSet nodes;
    std::size_t offspring = 0;
    std::uint32_t parent = kNoNode;
    std::vector<std::uint32_t> children;
  };
  std::vector<Vertex> vertices; // vertices[0] is the root when non-empty
};

[[nodiscard]] SeparatorTree build_decomposition(const EmbeddedGraph &g);

/// Union of the tree vertices whose offspring exceeds `threshold`, sorted.
[[nodiscard]] NodeSet heavy_separator_nodes(const SeparatorTree &tree, std::size_t threshold);

/// Node set whose removal leaves a planar graph; empty for genus 0.
/// Takes the fundamental cycles of the edges outside a tree-cotree pair.
[[nodiscard]] NodeSet planarize(const EmbeddedGraph &g);

} // namespace sepcode
