#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

namespace sepcode::oracle {

namespace {

// Face walk: from dart (a -> b) continue with the clockwise successor of a around b.
std::vector<std::size_t> face_lengths(const Rot &rot) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::vector<std::size_t> out;
  for (std::uint32_t u = 0; u < rot.size(); ++u) {
    for (std::uint32_t v : rot[u]) {
      if (seen.contains({u, v})) {
        continue;
      }
      std::size_t len = 0;
      std::uint32_t a = u;
      std::uint32_t b = v;
      while (!seen.contains({a, b})) {
        seen.insert({a, b});
        ++len;
        const auto &rb = rot[b];
        const auto i = std::find(rb.begin(), rb.end(), a) - rb.begin();
        const std::uint32_t c = rb[(i + 1) % rb.size()];
        a = b;
        b = c;
      }
      out.push_back(len);
    }
  }
  return out;
}

Rot normalized(const Rot &rot, const std::vector<std::uint32_t> &perm) {
  Rot out(rot.size());
  for (std::uint32_t v = 0; v < rot.size(); ++v) {
    auto &r = out[perm[v]];
    for (auto w : rot[v]) {
      r.push_back(perm[w]);
    }
    if (!r.empty()) {
      std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
    }
  }
  return out;
}

Rot least_form(const Rot &rot) {
  std::vector<std::uint32_t> perm(rot.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rot best = normalized(rot, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    best = std::min(best, normalized(rot, perm));
  }
  return best;
}

bool genus_zero(const Rot &rot, std::size_t edges) {
  // Connected: V - E + F = 2 on the sphere. A single node has one face.
  const std::size_t faces = edges == 0 ? 1 : face_lengths(rot).size();
  return rot.size() + faces == edges + 2;
}

std::function<bool(const Rot &, std::size_t)> predicate(const std::string &name) {
  if (name == "forest5") {
    return [](const Rot &rot, std::size_t edges) {
      return edges + 1 == rot.size() &&
             std::all_of(rot.begin(), rot.end(), [](const auto &r) { return r.size() <= 5; });
    };
  }
  if (name == "triangulation") {
    return [](const Rot &rot, std::size_t edges) {
      if (rot.size() < 3 || !genus_zero(rot, edges)) {
        return false;
      }
      const auto lengths = face_lengths(rot);
      return std::all_of(lengths.begin(), lengths.end(), [](std::size_t l) { return l == 3; });
    };
  }
  return genus_zero;
}

} // namespace

TableCount brute_force_table(std::size_t m, const std::string &class_name) {
  const auto accept = predicate(class_name);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = a + 1; b < m; ++b) {
      pairs.emplace_back(a, b);
    }
  }
  std::set<Rot> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs.size()); ++mask) {
    std::vector<std::vector<std::uint32_t>> adj(m);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if ((mask >> i) & 1U) {
        adj[pairs[i].first].push_back(pairs[i].second);
        adj[pairs[i].second].push_back(pairs[i].first);
        ++edges;
      }
    }
    std::vector<bool> reached(m, false);
    std::vector<std::uint32_t> stack = {0};
    reached[0] = true;
    std::size_t seen = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (!reached[w]) {
          reached[w] = true;
          ++seen;
          stack.push_back(w);
        }
      }
    }
    if (seen != m) {
      continue;
    }
    // All rotation systems: fix the first neighbour, permute the rest.
    Rot rot = adj;
    for (auto &r : rot) {
      std::sort(r.begin(), r.end());
    }
    auto recurse = [&](auto &self, std::size_t v) -> void {
      if (v == m) {
        if (accept(rot, edges)) {
          classes.insert(least_form(rot));
        }
        return;
      }
      auto &r = rot[v];
      if (r.size() <= 2) {
        self(self, v + 1);
        return;
      }
      std::sort(r.begin() + 1, r.end());
      do {
        self(self, v + 1);
      } while (std::next_permutation(r.begin() + 1, r.end()));
    };
    recurse(recurse, 0);
  }
  TableCount out;
  out.count = classes.size();
  out.representatives.assign(classes.begin(), classes.end());
  return out;
}

Labeling random_labeling(std::size_t n, Rng &rng) {
  Labeling l(n);
  std::iota(l.begin(), l.end(), 0);
  std::shuffle(l.begin(), l.end(), rng);
  return l;
}

std::vector<std::map<NodeId, NodeId>> expected_lift(const EmbeddedGraph &g, const Separation &fine,
                                                    const Separation &coarse,
                                                    const std::vector<Labeling> &fine_labels) {
  std::map<NodeId, std::size_t> fine_part;
  for (std::size_t i = 0; i < fine.parts.size(); ++i) {
    for (NodeId v : fine.parts[i]) {
      fine_part[v] = i;
    }
  }
  std::vector<std::map<NodeId, NodeId>> out;
  for (std::size_t j = 1; j < coarse.parts.size(); ++j) {
    std::set<NodeId> nodes(coarse.parts[j].begin(), coarse.parts[j].end());
    for (NodeId v : coarse.parts[j]) {
      for (NodeId w : g.rotation(v)) {
        nodes.insert(w);
      }
    }
    std::vector<NodeId> w_nodes;
    std::vector<std::tuple<std::size_t, NodeId, NodeId>> rest;
    for (NodeId v : nodes) {
      const std::size_t i = fine_part[v];
      if (i == 0) {
        w_nodes.push_back(v);
        continue;
      }
      std::vector<NodeId> hosts(fine.parts[i].begin(), fine.parts[i].end());
      for (NodeId x : fine.parts[i]) {
        for (NodeId y : g.rotation(x)) {
          hosts.push_back(y);
        }
      }
      std::sort(hosts.begin(), hosts.end());
      hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
      const auto local = std::lower_bound(hosts.begin(), hosts.end(), v) - hosts.begin();
      rest.emplace_back(i, fine_labels[i - 1][local], v);
    }
    std::sort(rest.begin(), rest.end());
    std::map<NodeId, NodeId> label;
    NodeId next = 0;
    for (NodeId v : w_nodes) {
      label[v] = next++;
    }
    for (const auto &[i, l, v] : rest) {
      label[v] = next++;
    }
    out.push_back(std::move(label));
  }
  return out;
}

TwoLevelInstance random_two_level(Rng &rng, int kind) {
  const std::size_t n = 8 + rng() % 193;
  TwoLevelInstance in;
  switch (kind % 4) {
  case 0: in.g = random_plane_triangulation(std::max<std::size_t>(n, 4), rng); break;
  case 1: in.g = random_connected_planar(n, 0.3, rng); break;
  case 2: in.g = random_tree(n, 5, rng); break;
  default: in.g = random_torus_triangulation(std::max<std::size_t>(n, 8), rng); break;
  }
  const Separation s0 = trivial_separation(in.g);
  const double l1 = 1.5 + double(rng() % 3);
  const Separation s1 = refine_with_ell(in.g, s0, 1, l1);
  const std::size_t cap = 5 + rng() % 10;
  const auto fits = [&](const NodeSet &v) { return v.size() + neighborhood(in.g, v).size() <= cap; };
  if (rng() % 3 == 0) {
    in.coarse = s0;
    in.fine = s1;
  } else {
    in.coarse = s1;
    in.fine = refine_to_fit(in.g, s1, 2, fits);
  }
  return in;
}

std::vector<std::vector<EmbeddedGraph>> fine_graphs_by_part(const TwoLevelInstance &in,
                                                            const std::vector<Labeling> &labels) {
  std::vector<std::uint32_t> owner(in.g.node_count(), 0);
  for (std::size_t j = 1; j < in.coarse.parts.size(); ++j) {
    for (NodeId v : in.coarse.parts[j]) {
      owner[v] = std::uint32_t(j);
    }
  }
  const auto parts = part_graphs(in.g, in.fine);
  std::vector<std::vector<EmbeddedGraph>> out(in.coarse.part_count());
  for (std::size_t i = 1; i <= in.fine.part_count(); ++i) {
    out[owner[in.fine.parts[i].front()] - 1].push_back(relabel(parts[i - 1].graph, labels[i - 1]));
  }
  return out;
}

bool ordering_by_triples(const Separation &fine, const Separation &coarse, std::size_t n) {
  std::vector<int> owner(n, -1);
  for (std::size_t j = 1; j < coarse.parts.size(); ++j) {
    for (NodeId v : coarse.parts[j]) {
      owner[v] = int(j);
    }
  }
  const std::size_t p = fine.part_count();
  std::vector<int> home(p + 1, -1);
  for (std::size_t i = 1; i <= p; ++i) {
    home[i] = owner[fine.parts[i].front()];
  }
  for (std::size_t a = 1; a <= p; ++a) {
    for (std::size_t c = a + 2; c <= p; ++c) {
      if (home[a] != home[c]) {
        continue;
      }
      for (std::size_t b = a + 1; b < c; ++b) {
        if (home[b] != home[a]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::string separator_violation(const EmbeddedGraph &g, std::span<const NodeId> offspring, const NodeSet &s,
                                const std::vector<const NodeSet *> &sides, double c_sep) {
  std::vector<int> owner(g.node_count(), -2);
  for (NodeId v : offspring) {
    owner[v] = -1;
  }
  std::size_t total = 0;
  const auto claim = [&](NodeId v, int who) {
    if (v >= owner.size() || owner[v] != -1) {
      return false;
    }
    owner[v] = who;
    ++total;
    return true;
  };
  for (NodeId v : s) {
    if (!claim(v, 0)) {
      return "node " + std::to_string(v) + " outside offspring or repeated";
    }
  }
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (NodeId v : *sides[i]) {
      if (!claim(v, int(i) + 1)) {
        return "node " + std::to_string(v) + " outside offspring or repeated";
      }
    }
  }
  if (total != offspring.size()) {
    return "sets cover " + std::to_string(total) + " of " + std::to_string(offspring.size()) + " nodes";
  }
  const double n = double(offspring.size());
  if (double(s.size()) > c_sep * std::sqrt(n)) {
    return "separator of " + std::to_string(s.size()) + " nodes for n = " + std::to_string(offspring.size());
  }
  for (const NodeSet *side : sides) {
    if (3 * side->size() > 2 * offspring.size()) {
      return "side of " + std::to_string(side->size()) + " nodes for n = " + std::to_string(offspring.size());
    }
  }
  for (NodeId v : offspring) {
    for (NodeId w : g.rotation(v)) {
      if (owner[v] > 0 && owner[w] > 0 && owner[v] != owner[w]) {
        return "edge " + std::to_string(v) + "-" + std::to_string(w) + " crosses the separator";
      }
    }
  }
  return {};
}

std::string tree_violation(const EmbeddedGraph &g, const SeparatorTree &tree, double c_sep) {
  if (tree.vertices.empty()) {
    return g.node_count() == 0 ? std::string() : "empty tree";
  }
  std::vector<int> seen(g.node_count(), 0);
  std::vector<NodeSet> offspring(tree.vertices.size());
  for (std::size_t i = tree.vertices.size(); i-- > 0;) {
    const auto &v = tree.vertices[i];
    offspring[i] = v.nodes;
    for (auto c : v.children) {
      if (c <= i || c >= tree.vertices.size()) {
        return "child " + std::to_string(c) + " of vertex " + std::to_string(i) + " out of order";
      }
      offspring[i].insert(offspring[i].end(), offspring[c].begin(), offspring[c].end());
    }
    std::sort(offspring[i].begin(), offspring[i].end());
    if (offspring[i].size() != v.offspring) {
      return "vertex " + std::to_string(i) + " reports offspring " + std::to_string(v.offspring);
    }
    if (v.children.size() > 2) {
      return "vertex " + std::to_string(i) + " has " + std::to_string(v.children.size()) + " children";
    }
    for (NodeId x : v.nodes) {
      if (x >= seen.size()) {
        return "node " + std::to_string(x) + " out of range";
      }
      ++seen[x];
    }
    if (v.children.empty()) {
      if (v.nodes.size() != 1) {
        return "leaf " + std::to_string(i) + " holds " + std::to_string(v.nodes.size()) + " nodes";
      }
      continue;
    }
    std::vector<const NodeSet *> sides;
    for (auto c : v.children) {
      sides.push_back(&offspring[c]);
    }
    const std::string bad = separator_violation(g, offspring[i], v.nodes, sides, c_sep);
    if (!bad.empty()) {
      return "vertex " + std::to_string(i) + ": " + bad;
    }
  }
  for (NodeId v = 0; v < seen.size(); ++v) {
    if (seen[v] != 1) {
      return "node " + std::to_string(v) + " appears " + std::to_string(seen[v]) + " times";
    }
  }
  return {};
}

} // namespace sepcode::oracle
