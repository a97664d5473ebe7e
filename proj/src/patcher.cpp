#include "sepcode/patcher.hpp"

#include <algorithm>

namespace sepcode {

namespace {

std::vector<Edge> sorted_edges(const EmbeddedGraph &g) {
  std::vector<Edge> out;
  out.reserve(g.edge_count());
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (g.tail(d) < g.head(d)) {
      out.emplace_back(g.tail(d), g.head(d));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

Patch complete(const EmbeddedGraph &part, const EmbeddedGraph &closure) {
  if (part.node_count() < 3 || !is_connected(part) || genus(part) != 0) {
    fail(ErrorCode::NotPatchable, "part must be a connected plane graph on at least 3 nodes");
  }
  if (closure.node_count() != part.node_count()) {
    fail(ErrorCode::NotPatchable, "closure has a different node set");
  }
  Patch out;
  try {
    out.completed = triangulate(genus(closure) == 0 ? closure : part);
  } catch (const Error &) {
    out.completed = triangulate(part);
  }
  for (const Edge &e : sorted_edges(out.completed)) {
    if (!part.adjacent(e.first, e.second)) {
      out.fix.push_back(e);
    }
  }
  return out;
}

Patch complete(const EmbeddedGraph &part) { return complete(part, part); }

EmbeddedGraph apply_fix(const EmbeddedGraph &completed, const std::vector<Edge> &fix) {
  std::vector<std::vector<NodeId>> rot(completed.node_count());
  for (NodeId v = 0; v < completed.node_count(); ++v) {
    for (NodeId w : completed.rotation(v)) {
      const Edge e{std::min(v, w), std::max(v, w)};
      if (!std::binary_search(fix.begin(), fix.end(), e)) {
        rot[v].push_back(w);
      }
    }
  }
  return EmbeddedGraph::from_rotations(rot);
}

BitString encode_fix(const EmbeddedGraph &completed, const std::vector<Edge> &fix) {
  const auto edges = sorted_edges(completed);
  const unsigned width = index_width(edges.size());
  BitString out;
  encode_uint(out, fix.size());
  for (const Edge &e : fix) {
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) {
      fail(ErrorCode::NotPatchable, "fix edge missing from completed graph");
    }
    out.append_bits(std::uint64_t(it - edges.begin()), width);
  }
  return out;
}

std::vector<Edge> decode_fix(const EmbeddedGraph &completed, BitReader &in) {
  const auto edges = sorted_edges(completed);
  const unsigned width = index_width(edges.size());
  const std::uint64_t count = decode_uint(in);
  if (count > edges.size()) {
    fail(ErrorCode::Malformed, "fix lists more edges than the completed graph has");
  }
  std::vector<Edge> fix;
  std::uint64_t previous = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t index = in.read_bits(width);
    if (index >= edges.size() || (i > 0 && index <= previous)) {
      fail(ErrorCode::Malformed, "fix edge index out of order or range");
    }
    previous = index;
    fix.push_back(edges[index]);
  }
  return fix;
}

} // namespace sepcode
