#include "sepcode/generators.hpp"

#include <algorithm>
#include <array>

namespace sepcode {

namespace {

using Rotations = std::vector<std::vector<NodeId>>;

void insert_after(std::vector<NodeId> &rot, NodeId after, NodeId w) {
  auto it = std::find(rot.begin(), rot.end(), after);
  rot.insert(it + 1, w);
}

std::size_t index_of(const std::vector<NodeId> &rot, NodeId x) {
  return static_cast<std::size_t>(std::find(rot.begin(), rot.end(), x) - rot.begin());
}

bool has(const std::vector<NodeId> &rot, NodeId x) { return std::find(rot.begin(), rot.end(), x) != rot.end(); }

// Grows a triangulation by inserting nodes into uniformly chosen faces.
void stack_nodes(Rotations &rot, std::size_t n, Rng &rng) {
  std::vector<std::array<NodeId, 3>> tri;
  const auto g = EmbeddedGraph::from_rotations(rot);
  for (const auto &f : faces(g)) {
    tri.push_back({g.tail(f[0]), g.tail(f[1]), g.tail(f[2])});
  }
  while (rot.size() < n) {
    const auto w = static_cast<NodeId>(rot.size());
    const std::size_t i = rng() % tri.size();
    const auto [x, y, z] = tri[i];
    insert_after(rot[x], z, w);
    insert_after(rot[y], x, w);
    insert_after(rot[z], y, w);
    rot.push_back({x, z, y});
    tri[i] = {x, y, w};
    tri.push_back({y, z, w});
    tri.push_back({z, x, w});
  }
}

// Flips the edge u-v between faces (u,v,a) and (v,u,b) when the result stays simple.
bool try_flip(Rotations &rot, NodeId u, NodeId v) {
  auto &ru = rot[u];
  auto &rv = rot[v];
  if (ru.size() <= 3 || rv.size() <= 3) {
    return false;
  }
  const NodeId a = rv[(index_of(rv, u) + 1) % rv.size()];
  const NodeId b = ru[(index_of(ru, v) + 1) % ru.size()];
  if (a == b || has(rot[a], b)) {
    return false;
  }
  ru.erase(ru.begin() + static_cast<std::ptrdiff_t>(index_of(ru, v)));
  rv.erase(rv.begin() + static_cast<std::ptrdiff_t>(index_of(rv, u)));
  insert_after(rot[a], v, b);
  insert_after(rot[b], u, a);
  return true;
}

void random_flips(Rotations &rot, std::size_t attempts, Rng &rng) {
  for (std::size_t i = 0; i < attempts; ++i) {
    const auto u = static_cast<NodeId>(rng() % rot.size());
    const NodeId v = rot[u][rng() % rot[u].size()];
    try_flip(rot, u, v);
  }
}

} // namespace

EmbeddedGraph random_plane_triangulation(std::size_t n, Rng &rng) {
  if (n < 3) {
    fail(ErrorCode::TooSmall, "a triangulation needs at least 3 nodes");
  }
  Rotations rot = {{1, 2}, {2, 0}, {0, 1}};
  stack_nodes(rot, n, rng);
  random_flips(rot, 10 * n, rng);
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph random_torus_triangulation(std::size_t n, Rng &rng) {
  if (n < 7) {
    fail(ErrorCode::TooSmall, "a torus triangulation needs at least 7 nodes");
  }
  Rotations rot = k7_torus().rotations();
  stack_nodes(rot, n, rng);
  random_flips(rot, 10 * n, rng);
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph random_connected_planar(std::size_t n, double keep, Rng &rng) {
  if (n < 3) {
    return path_graph(n);
  }
  const auto t = random_plane_triangulation(n, rng);
  // Random-order search tree from a random root.
  std::vector<bool> tree(t.dart_count(), false);
  std::vector<bool> seen(n, false);
  std::vector<NodeId> frontier = {static_cast<NodeId>(rng() % n)};
  seen[frontier[0]] = true;
  while (!frontier.empty()) {
    const std::size_t i = rng() % frontier.size();
    const NodeId v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    for (DartId d = t.first_dart(v); d < t.first_dart(v) + t.degree(v); ++d) {
      if (!seen[t.head(d)]) {
        seen[t.head(d)] = true;
        tree[d] = tree[t.twin(d)] = true;
        frontier.push_back(t.head(d));
      }
    }
  }
  std::bernoulli_distribution coin(keep);
  for (DartId d = 0; d < t.dart_count(); ++d) {
    if (!tree[d] && d < t.twin(d) && coin(rng)) {
      tree[d] = tree[t.twin(d)] = true;
    }
  }
  Rotations rot(n);
  for (DartId d = 0; d < t.dart_count(); ++d) {
    if (tree[d]) {
      rot[t.tail(d)].push_back(t.head(d));
    }
  }
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph random_tree(std::size_t n, std::uint32_t max_degree, Rng &rng) {
  Rotations rot(n);
  std::vector<NodeId> open;
  if (n > 0) {
    open.push_back(0);
  }
  for (NodeId v = 1; v < n; ++v) {
    const std::size_t i = rng() % open.size();
    const NodeId p = open[i];
    rot[p].push_back(v);
    rot[v].push_back(p);
    if (rot[p].size() >= max_degree) {
      open[i] = open.back();
      open.pop_back();
    }
    if (max_degree > 1) {
      open.push_back(v);
    }
  }
  for (auto &r : rot) {
    std::shuffle(r.begin(), r.end(), rng);
  }
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph random_forest(std::size_t n, std::size_t components, std::uint32_t max_degree, Rng &rng) {
  components = std::clamp<std::size_t>(components, n == 0 ? 0 : 1, n);
  std::vector<EmbeddedGraph> parts;
  std::size_t left = n;
  for (std::size_t c = 0; c < components; ++c) {
    const std::size_t rest = components - c - 1;
    const std::size_t size = c + 1 == components ? left : 1 + rng() % (left - rest);
    parts.push_back(random_tree(size, max_degree, rng));
    left -= size;
  }
  std::shuffle(parts.begin(), parts.end(), rng);
  return disjoint_union(parts);
}

EmbeddedGraph path_graph(std::size_t n) {
  Rotations rot(n);
  for (NodeId v = 0; v + 1 < n; ++v) {
    rot[v].push_back(v + 1);
    rot[v + 1].push_back(v);
  }
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph cycle_graph(std::size_t n) {
  if (n < 3) {
    fail(ErrorCode::TooSmall, "a cycle needs at least 3 nodes");
  }
  Rotations rot(n);
  for (NodeId v = 0; v < n; ++v) {
    rot[v] = {static_cast<NodeId>((v + 1) % n), static_cast<NodeId>((v + n - 1) % n)};
  }
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph grid_graph(std::size_t width, std::size_t height) {
  Rotations rot(width * height);
  auto id = [&](std::size_t x, std::size_t y) { return static_cast<NodeId>(y * width + x); };
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      auto &r = rot[id(x, y)];
      // Clockwise with y growing downward: right, down, left, up.
      if (x + 1 < width) r.push_back(id(x + 1, y));
      if (y + 1 < height) r.push_back(id(x, y + 1));
      if (x > 0) r.push_back(id(x - 1, y));
      if (y > 0) r.push_back(id(x, y - 1));
    }
  }
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph k7_torus() {
  Rotations rot(7);
  for (NodeId i = 0; i < 7; ++i) {
    for (NodeId s : {1U, 3U, 2U, 6U, 4U, 5U}) {
      rot[i].push_back((i + s) % 7);
    }
  }
  return EmbeddedGraph::from_rotations(rot);
}

} // namespace sepcode
