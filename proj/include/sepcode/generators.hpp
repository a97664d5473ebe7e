#pragma once

#include <cstdint>
#include <random>

#include "sepcode/embgraph.hpp"

namespace sepcode {

using Rng = std::mt19937_64;

/// Uniformly stacked triangulation followed by random edge flips.
[[nodiscard]] EmbeddedGraph random_plane_triangulation(std::size_t n, Rng &rng);
/// Triangulation of the torus on n >= 7 nodes, grown from K7.
[[nodiscard]] EmbeddedGraph random_torus_triangulation(std::size_t n, Rng &rng);
/// Connected plane graph: a random spanning tree of a random triangulation plus
/// each remaining edge with probability `keep`.
[[nodiscard]] EmbeddedGraph random_connected_planar(std::size_t n, double keep, Rng &rng);
/// Random tree with degrees at most max_degree and shuffled rotations.
[[nodiscard]] EmbeddedGraph random_tree(std::size_t n, std::uint32_t max_degree, Rng &rng);
/// Disjoint union of random trees with `components` parts.
[[nodiscard]] EmbeddedGraph random_forest(std::size_t n, std::size_t components, std::uint32_t max_degree,
                                          Rng &rng);
[[nodiscard]] EmbeddedGraph path_graph(std::size_t n);
[[nodiscard]] EmbeddedGraph cycle_graph(std::size_t n);
[[nodiscard]] EmbeddedGraph grid_graph(std::size_t width, std::size_t height);
/// K7 embedded on the torus.
[[nodiscard]] EmbeddedGraph k7_torus();

} // namespace sepcode
