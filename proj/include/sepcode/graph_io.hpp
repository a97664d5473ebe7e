#pragma once

#include <iosfwd>
#include <string>

#include "sepcode/embgraph.hpp"

namespace sepcode {

/// Text format: a header line "n g" (node count, genus), then line v lists the
/// neighbors of node v in clockwise order, separated by spaces.
[[nodiscard]] EmbeddedGraph read_graph(std::istream &in);
void write_graph(std::ostream &out, const EmbeddedGraph &g);

[[nodiscard]] EmbeddedGraph load_graph(const std::string &path);
void save_graph(const std::string &path, const EmbeddedGraph &g);

} // namespace sepcode
