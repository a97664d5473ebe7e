#include "sepcode/planar_sep.hpp"

#include <algorithm>
#include <cmath>

#include "sepcode/constants.hpp"

namespace sepcode {

namespace {

constexpr std::uint32_t kUnseen = ~std::uint32_t(0);

struct SearchTree {
  std::vector<std::uint32_t> depth;
  std::vector<DartId> parent_dart; // dart from the parent into v; kNoNode at roots
  std::vector<NodeId> order;
};

// Breadth-first forest; roots are taken in ascending id among unreached nodes
// of `roots`, or every node when `roots` is empty.
SearchTree bfs(const EmbeddedGraph &g, std::span<const NodeId> roots) {
  const std::size_t n = g.node_count();
  SearchTree t;
  t.depth.assign(n, kUnseen);
  t.parent_dart.assign(n, kNoNode);
  t.order.reserve(n);
  auto grow = [&](NodeId r) {
    if (t.depth[r] != kUnseen) {
      return;
    }
    t.depth[r] = 0;
    std::size_t head = t.order.size();
    t.order.push_back(r);
    while (head < t.order.size()) {
      const NodeId v = t.order[head++];
      for (DartId d = g.first_dart(v); d < g.first_dart(v) + g.degree(v); ++d) {
        const NodeId w = g.head(d);
        if (t.depth[w] == kUnseen) {
          t.depth[w] = t.depth[v] + 1;
          t.parent_dart[w] = d;
          t.order.push_back(w);
        }
      }
    }
  };
  if (roots.empty()) {
    for (NodeId v = 0; v < n; ++v) {
      grow(v);
    }
  } else {
    for (NodeId r : roots) {
      grow(r);
    }
  }
  return t;
}

bool is_tree_dart(const SearchTree &t, const EmbeddedGraph &g, DartId d) {
  return t.parent_dart[g.head(d)] == d || t.parent_dart[g.tail(d)] == g.twin(d);
}

// Nodes on the tree path u .. lca .. v.
void tree_cycle(const EmbeddedGraph &g, const SearchTree &t, NodeId u, NodeId v, std::vector<NodeId> &out) {
  while (u != v) {
    if (t.depth[u] >= t.depth[v]) {
      out.push_back(u);
      u = g.tail(t.parent_dart[u]);
    } else {
      out.push_back(v);
      v = g.tail(t.parent_dart[v]);
    }
  }
  out.push_back(u);
}

// Face index per dart.
std::vector<std::uint32_t> face_index(const EmbeddedGraph &g, std::size_t &count) {
  std::vector<std::uint32_t> face(g.dart_count(), kUnseen);
  count = 0;
  for (DartId s = 0; s < g.dart_count(); ++s) {
    if (face[s] != kUnseen) {
      continue;
    }
    for (DartId d = s; face[d] == kUnseen; d = g.next_cw(g.twin(d))) {
      face[d] = static_cast<std::uint32_t>(count);
    }
    ++count;
  }
  return face;
}

// Spanning forest of the dual restricted to edges outside the primal tree.
// Returns, per dart, whether its edge is a cotree edge; `parent_edge[f]` is
// the dart (on f's side) linking face f to its parent face.
std::vector<bool> cotree(const EmbeddedGraph &g, const SearchTree &t, const std::vector<std::uint32_t> &face,
                         std::size_t face_count, std::vector<DartId> &parent_edge, std::vector<std::uint32_t> &order) {
  std::vector<std::vector<DartId>> darts_of(face_count);
  for (DartId d = 0; d < g.dart_count(); ++d) {
    darts_of[face[d]].push_back(d);
  }
  std::vector<bool> used(g.dart_count(), false);
  std::vector<bool> seen(face_count, false);
  parent_edge.assign(face_count, kNoNode);
  order.clear();
  for (std::uint32_t root = 0; root < face_count; ++root) {
    if (seen[root]) {
      continue;
    }
    seen[root] = true;
    std::size_t head = order.size();
    order.push_back(root);
    while (head < order.size()) {
      const std::uint32_t f = order[head++];
      for (DartId d : darts_of[f]) {
        const std::uint32_t h = face[g.twin(d)];
        if (seen[h] || is_tree_dart(t, g, d)) {
          continue;
        }
        seen[h] = true;
        parent_edge[h] = g.twin(d);
        used[d] = used[g.twin(d)] = true;
        order.push_back(h);
      }
    }
  }
  return used;
}

// Largest-first assignment of mutually non-adjacent pieces to two sides.
void pack_sides(std::vector<NodeSet> &items, Separator &out) {
  std::stable_sort(items.begin(), items.end(), [](const NodeSet &a, const NodeSet &b) { return a.size() > b.size(); });
  for (auto &item : items) {
    NodeSet &side = out.side_a.size() <= out.side_b.size() ? out.side_a : out.side_b;
    side.insert(side.end(), item.begin(), item.end());
  }
  std::sort(out.side_a.begin(), out.side_a.end());
  std::sort(out.side_b.begin(), out.side_b.end());
}

// Contracts every node with depth <= l0 into a new node 0 and drops nodes with
// depth >= l2. Returns the contracted graph; `hosts[i]` is the node behind
// graph node i (kNoNode for the contracted node).
EmbeddedGraph contract_levels(const EmbeddedGraph &g, const SearchTree &t, long l0, long l2,
                              std::vector<NodeId> &hosts) {
  const std::size_t n = g.node_count();
  auto in_middle = [&](NodeId v) { return long(t.depth[v]) > l0 && long(t.depth[v]) < l2; };
  std::vector<NodeId> local(n, kNoNode);
  hosts.clear();
  if (l0 >= 0) {
    hosts.push_back(kNoNode);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (in_middle(v)) {
      local[v] = static_cast<NodeId>(hosts.size());
      hosts.push_back(v);
    }
  }
  std::vector<std::vector<NodeId>> rot(hosts.size());
  // Boundary darts around the contracted tree, in clockwise order.
  std::vector<DartId> keep(n, kNoNode);
  if (l0 >= 0) {
    struct Frame {
      DartId next;
      std::uint32_t left;
    };
    const NodeId root = t.order[0];
    std::vector<Frame> stack = {{g.first_dart(root), g.degree(root)}};
    while (!stack.empty()) {
      Frame &fr = stack.back();
      if (fr.left == 0) {
        stack.pop_back();
        continue;
      }
      const DartId d = fr.next;
      fr.next = g.next_cw(d);
      --fr.left;
      const NodeId w = g.head(d);
      if (long(t.depth[w]) <= l0) {
        if (t.parent_dart[w] == d) {
          stack.push_back({g.next_cw(g.twin(d)), g.degree(w) - 1});
        }
      } else if (keep[w] == kNoNode) {
        keep[w] = d;
        rot[0].push_back(local[w]);
      }
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!in_middle(v)) {
      continue;
    }
    for (DartId d = g.first_dart(v); d < g.first_dart(v) + g.degree(v); ++d) {
      const NodeId w = g.head(d);
      if (in_middle(w)) {
        rot[local[v]].push_back(local[w]);
      } else if (long(t.depth[w]) <= l0 && keep[v] == g.twin(d)) {
        rot[local[v]].push_back(0);
      }
    }
  }
  return EmbeddedGraph::from_rotations(rot);
}

// Raw separator of a connected plane graph; may be unbalanced only through the
// weight of the contracted node, which the caller repairs.
NodeSet connected_separator(const EmbeddedGraph &g) {
  const std::size_t n = g.node_count();
  if (n <= 2) {
    return {0};
  }
  const NodeId root = 0;
  const SearchTree t = bfs(g, std::span<const NodeId>(&root, 1));
  const long r = static_cast<long>(t.depth[t.order.back()]);
  std::vector<std::size_t> level_size(static_cast<std::size_t>(r) + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    ++level_size[t.depth[v]];
  }
  auto size_at = [&](long l) { return l < 0 || l > r ? std::size_t(0) : level_size[static_cast<std::size_t>(l)]; };
  auto level_nodes = [&](long l, NodeSet &out) {
    for (NodeId v = 0; v < n; ++v) {
      if (long(t.depth[v]) == l) {
        out.push_back(v);
      }
    }
  };

  long l1 = 0;
  std::size_t below = 0; // nodes with depth <= l1
  for (;; ++l1) {
    below += size_at(l1);
    if (2 * below >= n) {
      break;
    }
  }
  NodeSet s;
  if (double(size_at(l1)) <= 2.0 * std::sqrt(2.0 * double(n))) {
    level_nodes(l1, s);
    return s;
  }

  long l0 = l1;
  for (long l = l1; l >= -1; --l) {
    if (size_at(l) + 2 * std::size_t(l1 - l) < size_at(l0) + 2 * std::size_t(l1 - l0)) {
      l0 = l;
    }
  }
  long l2 = l1 + 1;
  for (long l = l1 + 1; l <= r + 1; ++l) {
    if (size_at(l) + 2 * std::size_t(l - l1 - 1) < size_at(l2) + 2 * std::size_t(l2 - l1 - 1)) {
      l2 = l;
    }
  }
  level_nodes(l0, s);
  level_nodes(l2, s);
  std::size_t middle = 0;
  for (long l = l0 + 1; l < l2; ++l) {
    middle += size_at(l);
  }
  if (3 * middle <= 2 * n) {
    std::sort(s.begin(), s.end());
    return s;
  }

  std::vector<NodeId> hosts;
  const EmbeddedGraph h = triangulate(contract_levels(g, t, l0, l2, hosts));
  const NodeId hroot = 0;
  const SearchTree ht = bfs(h, std::span<const NodeId>(&hroot, 1));
  std::size_t faces_total = 0;
  const auto face = face_index(h, faces_total);
  std::vector<DartId> parent_edge;
  std::vector<std::uint32_t> order;
  (void)cotree(h, ht, face, faces_total, parent_edge, order);
  std::vector<std::size_t> subtree(faces_total, 1);
  for (std::size_t i = order.size(); i-- > 1;) {
    const std::uint32_t f = order[i];
    subtree[face[h.twin(parent_edge[f])]] += subtree[f];
  }

  const std::size_t hn = h.node_count();
  std::size_t best_cost = ~std::size_t(0);
  DartId best = kNoNode;
  std::vector<NodeId> cycle;
  for (std::uint32_t f = 0; f < faces_total; ++f) {
    const DartId d = parent_edge[f];
    if (d == kNoNode) {
      continue;
    }
    cycle.clear();
    tree_cycle(h, ht, h.tail(d), h.head(d), cycle);
    const std::size_t c = cycle.size();
    const long inside = (long(subtree[f]) + 2 - long(c)) / 2;
    const long outside = long(hn) - long(c) - inside;
    const auto cost = static_cast<std::size_t>(std::max({inside, outside, 0L}));
    if (cost < best_cost) {
      best_cost = cost;
      best = d;
    }
  }
  cycle.clear();
  tree_cycle(h, ht, h.tail(best), h.head(best), cycle);
  for (NodeId x : cycle) {
    if (hosts[x] != kNoNode) {
      s.push_back(hosts[x]);
    }
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Separator of a plane graph that may be disconnected.
Separator separate(const EmbeddedGraph &g) {
  Separator out;
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> comp;
  const std::size_t c = connected_components(g, comp);
  std::vector<NodeSet> work(c);
  for (NodeId v = 0; v < n; ++v) {
    work[comp[v]].push_back(v);
  }
  std::vector<NodeSet> items;
  while (!work.empty()) {
    NodeSet piece = std::move(work.back());
    work.pop_back();
    if (3 * piece.size() <= 2 * n) {
      items.push_back(std::move(piece));
      continue;
    }
    const Subgraph sub = induced(g, piece);
    const NodeSet s = connected_separator(sub.graph);
    for (NodeId x : s) {
      out.separator.push_back(sub.to_host[x]);
    }
    const Subgraph rest = remove_nodes(sub.graph, s);
    std::vector<std::uint32_t> rc;
    const std::size_t k = connected_components(rest.graph, rc);
    std::vector<NodeSet> parts(k);
    for (NodeId v = 0; v < rest.graph.node_count(); ++v) {
      parts[rc[v]].push_back(sub.to_host[rest.to_host[v]]);
    }
    for (auto &p : parts) {
      work.push_back(std::move(p));
    }
  }
  std::sort(out.separator.begin(), out.separator.end());
  pack_sides(items, out);
  return out;
}

} // namespace

Separator planar_separator(const EmbeddedGraph &g) {
  if (genus(g) != 0) {
    fail(ErrorCode::NotPlanar, "separator needs a genus-0 embedding");
  }
  return separate(g);
}

SeparatorTree build_decomposition(const EmbeddedGraph &g) {
  if (genus(g) != 0) {
    fail(ErrorCode::NotPlanar, "decomposition needs a genus-0 embedding");
  }
  SeparatorTree tree;
  if (g.node_count() == 0) {
    return tree;
  }
  struct Task {
    NodeSet nodes;
    std::uint32_t parent;
  };
  NodeSet all(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    all[v] = v;
  }
  std::vector<Task> stack;
  stack.push_back({std::move(all), kNoNode});
  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    const auto id = static_cast<std::uint32_t>(tree.vertices.size());
    tree.vertices.emplace_back();
    tree.vertices[id].offspring = task.nodes.size();
    tree.vertices[id].parent = task.parent;
    if (task.parent != kNoNode) {
      tree.vertices[task.parent].children.push_back(id);
    }
    if (task.nodes.size() == 1) {
      tree.vertices[id].nodes = std::move(task.nodes);
      continue;
    }
    const Subgraph sub = induced(g, task.nodes);
    Separator sep = separate(sub.graph);
    if (sep.separator.empty()) {
      NodeSet &big = sep.side_a.size() >= sep.side_b.size() ? sep.side_a : sep.side_b;
      sep.separator.push_back(big.front());
      big.erase(big.begin());
    }
    if (sep.side_a.empty() && sep.side_b.empty()) {
      sep.side_a.push_back(sep.separator.back());
      sep.separator.pop_back();
    }
    auto to_host = [&](NodeSet &s) {
      for (NodeId &x : s) {
        x = sub.to_host[x];
      }
    };
    to_host(sep.separator);
    to_host(sep.side_a);
    to_host(sep.side_b);
    tree.vertices[id].nodes = std::move(sep.separator);
    if (!sep.side_b.empty()) {
      stack.push_back({std::move(sep.side_b), id});
    }
    if (!sep.side_a.empty()) {
      stack.push_back({std::move(sep.side_a), id});
    }
  }
  return tree;
}

NodeSet heavy_separator_nodes(const SeparatorTree &tree, std::size_t threshold) {
  NodeSet out;
  for (const auto &v : tree.vertices) {
    if (v.offspring > threshold) {
      out.insert(out.end(), v.nodes.begin(), v.nodes.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeSet planarize(const EmbeddedGraph &g) {
  if (genus(g) == 0) {
    return {};
  }
  const SearchTree t = bfs(g, {});
  std::size_t faces_total = 0;
  const auto face = face_index(g, faces_total);
  std::vector<DartId> parent_edge;
  std::vector<std::uint32_t> order;
  const std::vector<bool> co = cotree(g, t, face, faces_total, parent_edge, order);
  NodeSet out;
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (d < g.twin(d) && !co[d] && !is_tree_dart(t, g, d)) {
      tree_cycle(g, t, g.tail(d), g.head(d), out);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace sepcode
