#include "sepcode/embgraph.hpp"

#include <algorithm>
#include <unordered_set>

namespace sepcode {

EmbeddedGraph EmbeddedGraph::from_rotations(const std::vector<std::vector<NodeId>> &rotations) {
  const std::size_t n = rotations.size();
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    offsets[v + 1] = offsets[v] + static_cast<std::uint32_t>(rotations[v].size());
  }
  std::vector<NodeId> heads;
  heads.reserve(offsets[n]);
  for (const auto &r : rotations) {
    heads.insert(heads.end(), r.begin(), r.end());
  }
  return from_flat(std::move(offsets), std::move(heads));
}

EmbeddedGraph EmbeddedGraph::from_flat(std::vector<std::uint32_t> offsets, std::vector<NodeId> heads) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != heads.size() ||
      !std::is_sorted(offsets.begin(), offsets.end())) {
    fail(ErrorCode::InvalidEmbedding, "malformed offsets");
  }
  const std::size_t n = offsets.size() - 1;
  EmbeddedGraph g;
  g.offsets_ = std::move(offsets);
  const std::size_t darts = heads.size();
  g.heads_ = std::move(heads);
  g.tails_.resize(darts);
  g.twins_.assign(darts, kNoNode);

  // (neighbor, dart) per node, sorted, for duplicate detection and twin lookup.
  std::vector<std::pair<NodeId, DartId>> sorted(darts);
  for (NodeId v = 0; v < n; ++v) {
    for (DartId d = g.offsets_[v]; d < g.offsets_[v + 1]; ++d) {
      const NodeId w = g.heads_[d];
      if (w >= n) {
        fail(ErrorCode::InvalidEmbedding, "neighbor id out of range");
      }
      if (w == v) {
        fail(ErrorCode::InvalidEmbedding, "self-loop at node " + std::to_string(v));
      }
      g.tails_[d] = v;
      sorted[d] = {w, d};
    }
    auto first = sorted.begin() + g.offsets_[v];
    auto last = sorted.begin() + g.offsets_[v + 1];
    std::sort(first, last);
    if (std::adjacent_find(first, last, [](auto &a, auto &b) { return a.first == b.first; }) != last) {
      fail(ErrorCode::InvalidEmbedding, "repeated neighbor at node " + std::to_string(v));
    }
  }
  for (DartId d = 0; d < darts; ++d) {
    const NodeId u = g.tails_[d];
    const NodeId w = g.heads_[d];
    auto first = sorted.begin() + g.offsets_[w];
    auto last = sorted.begin() + g.offsets_[w + 1];
    auto it = std::lower_bound(first, last, std::pair<NodeId, DartId>{u, 0});
    if (it == last || it->first != u) {
      fail(ErrorCode::InvalidEmbedding,
           "edge " + std::to_string(u) + "-" + std::to_string(w) + " missing its reverse");
    }
    g.twins_[d] = it->second;
  }
  return g;
}

DartId EmbeddedGraph::find_dart(NodeId u, NodeId v) const noexcept {
  for (DartId d = offsets_[u]; d < offsets_[u + 1]; ++d) {
    if (heads_[d] == v) {
      return d;
    }
  }
  return kNoNode;
}

bool EmbeddedGraph::adjacent(NodeId u, NodeId v) const noexcept {
  // Scan the smaller rotation.
  return degree(u) <= degree(v) ? find_dart(u, v) != kNoNode : find_dart(v, u) != kNoNode;
}

std::vector<std::vector<NodeId>> EmbeddedGraph::rotations() const {
  std::vector<std::vector<NodeId>> out(node_count());
  for (NodeId v = 0; v < node_count(); ++v) {
    auto r = rotation(v);
    out[v].assign(r.begin(), r.end());
  }
  return out;
}

std::uint32_t EmbeddedGraph::max_degree() const noexcept {
  std::uint32_t best = 0;
  for (NodeId v = 0; v < node_count(); ++v) {
    best = std::max(best, degree(v));
  }
  return best;
}

std::vector<std::vector<DartId>> faces(const EmbeddedGraph &g) {
  std::vector<std::vector<DartId>> out;
  std::vector<bool> seen(g.dart_count(), false);
  for (DartId s = 0; s < g.dart_count(); ++s) {
    if (seen[s]) {
      continue;
    }
    std::vector<DartId> face;
    DartId d = s;
    do {
      seen[d] = true;
      face.push_back(d);
      d = g.next_cw(g.twin(d));
    } while (d != s);
    out.push_back(std::move(face));
  }
  return out;
}

std::size_t face_count(const EmbeddedGraph &g) {
  std::size_t count = 0;
  std::vector<bool> seen(g.dart_count(), false);
  for (DartId s = 0; s < g.dart_count(); ++s) {
    if (seen[s]) {
      continue;
    }
    ++count;
    for (DartId d = s; !seen[d]; d = g.next_cw(g.twin(d))) {
      seen[d] = true;
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    count += g.degree(v) == 0 ? 1 : 0;
  }
  return count;
}

std::size_t connected_components(const EmbeddedGraph &g, std::vector<std::uint32_t> &component) {
  const std::size_t n = g.node_count();
  component.assign(n, ~std::uint32_t(0));
  std::vector<NodeId> stack;
  std::uint32_t count = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (component[s] != ~std::uint32_t(0)) {
      continue;
    }
    component[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.rotation(v)) {
        if (component[w] == ~std::uint32_t(0)) {
          component[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return count;
}

bool is_connected(const EmbeddedGraph &g) {
  std::vector<std::uint32_t> comp;
  return connected_components(g, comp) <= 1;
}

std::size_t genus(const EmbeddedGraph &g) {
  std::vector<std::uint32_t> comp;
  const auto c = static_cast<long long>(connected_components(g, comp));
  const auto v = static_cast<long long>(g.node_count());
  const auto e = static_cast<long long>(g.edge_count());
  const auto f = static_cast<long long>(face_count(g));
  const long long twice = 2 * c - v + e - f;
  if (twice < 0 || twice % 2 != 0) {
    fail(ErrorCode::InvalidEmbedding, "Euler characteristic inconsistent with an orientable surface");
  }
  return static_cast<std::size_t>(twice / 2);
}

bool is_triangulation(const EmbeddedGraph &g) {
  if (g.node_count() < 3 || !is_connected(g)) {
    return false;
  }
  for (DartId d = 0; d < g.dart_count(); ++d) {
    const DartId e = g.next_cw(g.twin(d));
    const DartId f = g.next_cw(g.twin(e));
    if (g.next_cw(g.twin(f)) != d) {
      return false;
    }
  }
  return true;
}

namespace {

// Mutable dart structure for chord insertion. next/prev walk clockwise
// around the tail; face successor is next[twin[d]].
struct DartLists {
  std::vector<NodeId> tail, head;
  std::vector<DartId> twin, next, prev;
  std::vector<DartId> any_dart;
  std::unordered_set<std::uint64_t> edges;

  static std::uint64_t key(NodeId a, NodeId b) {
    if (a > b) {
      std::swap(a, b);
    }
    return (std::uint64_t(a) << 32) | b;
  }

  explicit DartLists(const EmbeddedGraph &g) {
    const std::size_t m = g.dart_count();
    tail.resize(m);
    head.resize(m);
    twin.resize(m);
    next.resize(m);
    prev.resize(m);
    any_dart.assign(g.node_count(), kNoNode);
    edges.reserve(3 * g.node_count());
    for (DartId d = 0; d < m; ++d) {
      tail[d] = g.tail(d);
      head[d] = g.head(d);
      twin[d] = g.twin(d);
      next[d] = g.next_cw(d);
      prev[d] = g.prev_cw(d);
      any_dart[tail[d]] = d;
      edges.insert(key(tail[d], head[d]));
    }
  }

  [[nodiscard]] DartId succ(DartId d) const { return next[twin[d]]; }
  [[nodiscard]] DartId pred(DartId d) const { return twin[prev[d]]; }
  [[nodiscard]] bool admissible(NodeId a, NodeId b) const { return a != b && !edges.contains(key(a, b)); }

  // New edge between the face corners at darts x and y (both leaving their
  // corner along the face). Returns the new dart leaving tail(x), which takes
  // x's place in the face that keeps x's predecessor.
  DartId add_chord(DartId x, DartId y) {
    const auto e = static_cast<DartId>(tail.size());
    const DartId f = e + 1;
    const NodeId a = tail[x];
    const NodeId b = tail[y];
    tail.insert(tail.end(), {a, b});
    head.insert(head.end(), {b, a});
    twin.insert(twin.end(), {f, e});
    next.insert(next.end(), {x, y});
    prev.insert(prev.end(), {prev[x], prev[y]});
    next[prev[x]] = e;
    prev[x] = e;
    next[prev[y]] = f;
    prev[y] = f;
    edges.insert(key(a, b));
    return e;
  }

  [[nodiscard]] EmbeddedGraph build() const {
    std::vector<std::vector<NodeId>> rot(any_dart.size());
    for (NodeId v = 0; v < any_dart.size(); ++v) {
      const DartId s = any_dart[v];
      if (s == kNoNode) {
        continue;
      }
      DartId d = s;
      do {
        rot[v].push_back(head[d]);
        d = next[d];
      } while (d != s);
    }
    return EmbeddedGraph::from_rotations(rot);
  }
};

// Any admissible chord of the face through `start` of length k; splits the face
// and pushes both halves. Returns false if none exists.
bool split_any(DartLists &L, DartId start, std::size_t k, std::vector<std::pair<DartId, std::size_t>> &work) {
  std::vector<DartId> corner(k);
  corner[0] = start;
  for (std::size_t i = 1; i < k; ++i) {
    corner[i] = L.succ(corner[i - 1]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) {
        continue;
      }
      if (L.admissible(L.tail[corner[i]], L.tail[corner[j]])) {
        const DartId e = L.add_chord(corner[i], corner[j]);
        // e starts the face {e, corner[j..k-1], corner[0..i-1]}; its twin
        // starts {twin(e), corner[i..j-1]}.
        work.emplace_back(e, k - (j - i) + 1);
        work.emplace_back(L.twin[e], j - i + 1);
        return true;
      }
    }
  }
  return false;
}

} // namespace

EmbeddedGraph triangulate(const EmbeddedGraph &g) {
  if (g.node_count() < 3) {
    fail(ErrorCode::TooSmall, "triangulation needs at least 3 nodes");
  }
  if (!is_connected(g)) {
    fail(ErrorCode::Disconnected, "triangulation needs a connected graph");
  }
  DartLists L(g);
  std::vector<std::pair<DartId, std::size_t>> work;
  for (const auto &face : faces(g)) {
    work.emplace_back(face.front(), face.size());
  }
  while (!work.empty()) {
    auto [cur, k] = work.back();
    work.pop_back();
    std::size_t misses = 0;
    while (k > 3) {
      const DartId mid = L.succ(cur);
      const DartId far = L.succ(mid);
      if (L.admissible(L.tail[cur], L.tail[far])) {
        const DartId e = L.add_chord(cur, far);
        --k;
        misses = 0;
        cur = L.pred(e);
      } else if (++misses >= k) {
        if (!split_any(L, cur, k, work)) {
          fail(ErrorCode::CannotTriangulate, "face of length " + std::to_string(k) + " admits no chord");
        }
        break;
      } else {
        cur = mid;
      }
    }
  }
  return L.build();
}

Subgraph induced(const EmbeddedGraph &g, std::span<const NodeId> nodes) {
  Subgraph out;
  out.to_host.assign(nodes.begin(), nodes.end());
  std::sort(out.to_host.begin(), out.to_host.end());
  out.to_host.erase(std::unique(out.to_host.begin(), out.to_host.end()), out.to_host.end());
  const auto &hosts = out.to_host;
  auto local = [&](NodeId h) -> NodeId {
    auto it = std::lower_bound(hosts.begin(), hosts.end(), h);
    return it != hosts.end() && *it == h ? static_cast<NodeId>(it - hosts.begin()) : kNoNode;
  };
  std::vector<std::uint32_t> offsets(hosts.size() + 1, 0);
  std::vector<NodeId> heads;
  for (NodeId i = 0; i < hosts.size(); ++i) {
    for (NodeId w : g.rotation(hosts[i])) {
      const NodeId j = local(w);
      if (j != kNoNode) {
        heads.push_back(j);
      }
    }
    offsets[i + 1] = static_cast<std::uint32_t>(heads.size());
  }
  out.graph = EmbeddedGraph::from_flat(std::move(offsets), std::move(heads));
  return out;
}

NodeSet neighborhood(const EmbeddedGraph &g, std::span<const NodeId> nodes) {
  NodeSet inside(nodes.begin(), nodes.end());
  std::sort(inside.begin(), inside.end());
  NodeSet out;
  for (NodeId v : inside) {
    for (NodeId w : g.rotation(v)) {
      if (!std::binary_search(inside.begin(), inside.end(), w)) {
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Subgraph boundary_subgraph(const EmbeddedGraph &g, std::span<const NodeId> nodes) {
  NodeSet inside(nodes.begin(), nodes.end());
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  const NodeSet border = neighborhood(g, inside);
  Subgraph out;
  out.to_host.resize(inside.size() + border.size());
  std::merge(inside.begin(), inside.end(), border.begin(), border.end(), out.to_host.begin());
  const auto &hosts = out.to_host;
  auto local = [&](NodeId h) { return static_cast<NodeId>(std::lower_bound(hosts.begin(), hosts.end(), h) - hosts.begin()); };
  auto in_v = [&](NodeId h) { return std::binary_search(inside.begin(), inside.end(), h); };
  std::vector<std::vector<NodeId>> rot(hosts.size());
  for (NodeId i = 0; i < hosts.size(); ++i) {
    const bool own = in_v(hosts[i]);
    for (NodeId w : g.rotation(hosts[i])) {
      if (own || in_v(w)) {
        rot[i].push_back(local(w));
      }
    }
  }
  out.graph = EmbeddedGraph::from_rotations(rot);
  return out;
}

Subgraph remove_nodes(const EmbeddedGraph &g, std::span<const NodeId> nodes) {
  std::vector<bool> gone(g.node_count(), false);
  for (NodeId v : nodes) {
    gone[v] = true;
  }
  NodeSet keep;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!gone[v]) {
      keep.push_back(v);
    }
  }
  return induced(g, keep);
}

bool labeled_equal(const EmbeddedGraph &a, const EmbeddedGraph &b) {
  if (a.node_count() != b.node_count() || a.dart_count() != b.dart_count()) {
    return false;
  }
  for (NodeId v = 0; v < a.node_count(); ++v) {
    auto ra = a.rotation(v);
    auto rb = b.rotation(v);
    if (ra.size() != rb.size()) {
      return false;
    }
    if (ra.empty()) {
      continue;
    }
    auto it = std::find(ra.begin(), ra.end(), rb[0]);
    if (it == ra.end()) {
      return false;
    }
    const std::size_t shift = static_cast<std::size_t>(it - ra.begin());
    for (std::size_t i = 0; i < ra.size(); ++i) {
      if (ra[(i + shift) % ra.size()] != rb[i]) {
        return false;
      }
    }
  }
  return true;
}

EmbeddedGraph relabel(const EmbeddedGraph &g, std::span<const NodeId> new_label) {
  const std::size_t n = g.node_count();
  if (new_label.size() != n) {
    fail(ErrorCode::InconsistentLabels, "labeling size differs from node count");
  }
  std::vector<bool> used(n, false);
  for (NodeId l : new_label) {
    if (l >= n || used[l]) {
      fail(ErrorCode::InconsistentLabels, "labeling is not a permutation");
    }
    used[l] = true;
  }
  std::vector<std::vector<NodeId>> rot(n);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : g.rotation(v)) {
      rot[new_label[v]].push_back(new_label[w]);
    }
  }
  return EmbeddedGraph::from_rotations(rot);
}

EmbeddedGraph disjoint_union(std::span<const EmbeddedGraph> parts) {
  std::vector<std::vector<NodeId>> rot;
  for (const auto &p : parts) {
    const auto base = static_cast<NodeId>(rot.size());
    for (NodeId v = 0; v < p.node_count(); ++v) {
      auto &r = rot.emplace_back();
      for (NodeId w : p.rotation(v)) {
        r.push_back(base + w);
      }
    }
  }
  return EmbeddedGraph::from_rotations(rot);
}

} // namespace sepcode
