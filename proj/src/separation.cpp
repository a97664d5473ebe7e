#include "sepcode/separation.hpp"

#include <algorithm>
#include <cmath>

#include "sepcode/planar_sep.hpp"

namespace sepcode {

namespace {

constexpr std::uint32_t kNone = ~std::uint32_t(0);

double iterate_log(double x, std::size_t times) {
  for (std::size_t i = 0; i < times; ++i) {
    if (x <= 1) {
      return 1;
    }
    x = std::log2(x);
  }
  return std::max(1.0, x);
}

PropertyResult passing(const std::string &name) {
  PropertyResult r;
  r.name = name;
  return r;
}

PropertyResult failing(const std::string &name, const std::string &witness) {
  PropertyResult r;
  r.name = name;
  r.pass = false;
  r.witness = witness;
  return r;
}

std::vector<bool> membership(std::size_t n, const NodeSet &set) {
  std::vector<bool> in(n, false);
  for (NodeId v : set) {
    in[v] = true;
  }
  return in;
}

NodeSet set_union(const NodeSet &a, const NodeSet &b) {
  NodeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct Components {
  std::vector<std::uint32_t> of; // component per node, kNone for pool nodes
  std::vector<NodeSet> nodes;
};

Components components_outside(const EmbeddedGraph &g, const std::vector<bool> &in_pool) {
  Components c;
  c.of.assign(g.node_count(), kNone);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (in_pool[s] || c.of[s] != kNone) {
      continue;
    }
    const auto id = static_cast<std::uint32_t>(c.nodes.size());
    auto &members = c.nodes.emplace_back();
    c.of[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (NodeId w : g.rotation(v)) {
        if (!in_pool[w] && c.of[w] == kNone) {
          c.of[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
  }
  return c;
}

// Index of the coarse part holding each node (0 for the pool).
std::vector<std::uint32_t> owner_of(std::size_t n, const Separation &prev) {
  std::vector<std::uint32_t> owner(n, kNone);
  for (std::uint32_t j = 0; j < prev.parts.size(); ++j) {
    for (NodeId v : prev.parts[j]) {
      owner[v] = j;
    }
  }
  return owner;
}

// Groups components around hook nodes, coarse part by coarse part. `fits`
// decides whether a run of consecutive components may share one part.
Separation cluster(const EmbeddedGraph &g, const Separation &prev, NodeSet pool, const Components &comps,
                   std::size_t level, const std::function<bool(const std::vector<std::uint32_t> &)> &fits) {
  const std::size_t n = g.node_count();
  const auto owner = owner_of(n, prev);
  const std::vector<bool> in_pool = membership(n, pool);
  const std::size_t q = prev.part_count();
  std::vector<std::vector<std::uint32_t>> by_part(q + 1);
  for (std::uint32_t c = 0; c < comps.nodes.size(); ++c) {
    const std::uint32_t j = owner[comps.nodes[c].front()];
    if (j == 0 || j == kNone) {
      fail(ErrorCode::NotRefinement, "component outside every coarse part");
    }
    by_part[j].push_back(c);
  }

  Separation out;
  out.level = level;
  out.parts.push_back(std::move(pool));
  std::vector<bool> marked(comps.nodes.size(), false);
  std::vector<bool> queued(comps.nodes.size(), false);
  auto emit = [&](const std::vector<std::uint32_t> &run, NodeId hook) {
    NodeSet part;
    for (auto c : run) {
      part.insert(part.end(), comps.nodes[c].begin(), comps.nodes[c].end());
    }
    std::sort(part.begin(), part.end());
    out.parts.push_back(std::move(part));
    out.hooks.push_back(hook);
  };
  auto pack = [&](const std::vector<std::uint32_t> &order, NodeId hook) {
    std::size_t i1 = 0;
    while (i1 < order.size()) {
      std::vector<std::uint32_t> run = {order[i1]};
      std::size_t i2 = i1;
      while (i2 + 1 < order.size()) {
        run.push_back(order[i2 + 1]);
        if (!fits(run)) {
          run.pop_back();
          break;
        }
        ++i2;
      }
      emit(run, hook);
      i1 = i2 + 1;
    }
  };

  for (std::size_t j = 1; j <= q; ++j) {
    NodeSet candidates;
    for (auto c : by_part[j]) {
      for (NodeId v : comps.nodes[c]) {
        for (NodeId w : g.rotation(v)) {
          if (in_pool[w]) {
            candidates.push_back(w);
          }
        }
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (NodeId v0 : candidates) {
      const std::uint32_t deg = g.degree(v0);
      DartId start = g.first_dart(v0);
      for (DartId d = g.first_dart(v0); d < g.first_dart(v0) + deg; ++d) {
        if (g.head(d) < g.head(start)) {
          start = d;
        }
      }
      std::vector<std::uint32_t> order;
      DartId d = start;
      for (std::uint32_t t = 0; t < deg; ++t, d = g.next_cw(d)) {
        const std::uint32_t c = comps.of[g.head(d)];
        if (c != kNone && owner[g.head(d)] == j && !marked[c] && !queued[c]) {
          queued[c] = true;
          order.push_back(c);
        }
      }
      for (auto c : order) {
        marked[c] = true;
      }
      pack(order, v0);
    }
    // Only reachable when the pool is empty: no hook exists.
    for (auto c : by_part[j]) {
      if (!marked[c]) {
        marked[c] = true;
        emit({c}, kNoNode);
      }
    }
  }
  return out;
}

} // namespace

double ell(double n, std::size_t k) { return k == 0 ? n : iterate_log(n, k); }

double ell_log2(double log2_n, std::size_t k) {
  if (k == 0) {
    return std::exp2(log2_n);
  }
  return iterate_log(log2_n, k - 1);
}

LevelBounds level_bounds(double ell_k) {
  const double sq = ell_k * ell_k;
  LevelBounds b;
  b.degree = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(sq)));
  b.component = b.degree * b.degree;
  b.pack = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(sq * sq)));
  return b;
}

Separation trivial_separation(const EmbeddedGraph &g) {
  Separation s;
  s.parts.emplace_back();
  NodeSet all(g.node_count());
  for (NodeId v = 0; v < all.size(); ++v) {
    all[v] = v;
  }
  s.parts.push_back(std::move(all));
  s.hooks.push_back(kNoNode);
  return s;
}

NodeSet fragment(const EmbeddedGraph &g, const LevelBounds &bounds) {
  const NodeSet planar_cut = planarize(g);
  NodeSet high_degree;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) > bounds.degree) {
      high_degree.push_back(v);
    }
  }
  const Subgraph rest = remove_nodes(g, planar_cut);
  NodeSet heavy = heavy_separator_nodes(build_decomposition(rest.graph), bounds.component);
  for (NodeId &v : heavy) {
    v = rest.to_host[v];
  }
  std::sort(heavy.begin(), heavy.end());
  return set_union(set_union(planar_cut, high_degree), heavy);
}

Separation refine(const EmbeddedGraph &g, const Separation &prev, std::size_t k) {
  return refine_with_ell(g, prev, k, ell(double(g.node_count()), k));
}

Separation refine_with_ell(const EmbeddedGraph &g, const Separation &prev, std::size_t k, double ell_k) {
  if (!is_connected(g)) {
    fail(ErrorCode::Disconnected, "refinement needs a connected graph");
  }
  const LevelBounds bounds = level_bounds(ell_k);
  NodeSet pool = set_union(prev.pool(), fragment(g, bounds));
  const Components comps = components_outside(g, membership(g.node_count(), pool));
  auto fits = [&](const std::vector<std::uint32_t> &run) {
    std::size_t total = 0;
    for (auto c : run) {
      total += comps.nodes[c].size();
    }
    return total <= bounds.pack;
  };
  return cluster(g, prev, std::move(pool), comps, k, fits);
}

Separation refine_to_fit(const EmbeddedGraph &g, const Separation &prev, std::size_t k, const PartFits &fits) {
  if (!is_connected(g)) {
    fail(ErrorCode::Disconnected, "refinement needs a connected graph");
  }
  const std::size_t n = g.node_count();
  NodeSet pool = prev.pool();
  std::vector<bool> in_pool = membership(n, pool);
  const Components initial = components_outside(g, in_pool);
  std::vector<NodeSet> work(initial.nodes.rbegin(), initial.nodes.rend());
  std::vector<NodeSet> kept;
  while (!work.empty()) {
    NodeSet c = std::move(work.back());
    work.pop_back();
    if (fits(c)) {
      kept.push_back(std::move(c));
      continue;
    }
    NodeSet cut;
    if (c.size() == 1) {
      cut = c;
    } else {
      const Subgraph sub = induced(g, c);
      for (NodeId x : planar_separator(sub.graph).separator) {
        cut.push_back(sub.to_host[x]);
      }
      if (cut.empty()) {
        cut.push_back(c.front());
      }
    }
    for (NodeId x : cut) {
      in_pool[x] = true;
      pool.push_back(x);
    }
    // Components of c minus the cut, in ascending order of their least node.
    NodeSet rest;
    for (NodeId v : c) {
      if (!in_pool[v]) {
        rest.push_back(v);
      }
    }
    const Subgraph sub = induced(g, rest);
    std::vector<std::uint32_t> comp;
    const std::size_t count = connected_components(sub.graph, comp);
    std::vector<NodeSet> pieces(count);
    for (NodeId v = 0; v < sub.graph.node_count(); ++v) {
      pieces[comp[v]].push_back(sub.to_host[v]);
    }
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
      work.push_back(std::move(*it));
    }
  }
  std::sort(pool.begin(), pool.end());

  Components comps;
  comps.of.assign(n, kNone);
  std::sort(kept.begin(), kept.end());
  for (std::uint32_t i = 0; i < kept.size(); ++i) {
    for (NodeId v : kept[i]) {
      comps.of[v] = i;
    }
  }
  comps.nodes = std::move(kept);
  auto fits_run = [&](const std::vector<std::uint32_t> &run) {
    if (run.size() == 1) {
      return true;
    }
    NodeSet part;
    for (auto c : run) {
      part.insert(part.end(), comps.nodes[c].begin(), comps.nodes[c].end());
    }
    std::sort(part.begin(), part.end());
    return fits(part);
  };
  return cluster(g, prev, std::move(pool), comps, k, fits_run);
}

double envelope(double n, double ell_k, double c) { return std::ceil(n / std::pow(ell_k, 1.5)) + c * std::sqrt(n); }

bool SeparationReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const PropertyResult &r) { return r.pass; });
}

const PropertyResult *SeparationReport::find(const std::string &name) const {
  for (const auto &r : items) {
    if (r.name == name) {
      return &r;
    }
  }
  return nullptr;
}

SeparationReport check_separation(const EmbeddedGraph &g, const Separation &sep, const CheckParams &params) {
  SeparationReport report;
  const std::size_t n = g.node_count();
  const std::size_t p = sep.part_count();
  std::vector<std::uint32_t> part_of(n, kNone);

  PropertyResult s1 = passing("S1");
  for (std::uint32_t i = 0; i < sep.parts.size() && s1.pass; ++i) {
    for (NodeId v : sep.parts[i]) {
      if (v >= n) {
        s1 = failing("S1", "node " + std::to_string(v) + " out of range");
        break;
      }
      if (part_of[v] != kNone) {
        s1 = failing("S1", "node " + std::to_string(v) + " in parts " + std::to_string(part_of[v]) + " and " +
                               std::to_string(i));
        break;
      }
      part_of[v] = i;
    }
  }
  for (NodeId v = 0; v < n && s1.pass; ++v) {
    if (part_of[v] == kNone) {
      s1 = failing("S1", "node " + std::to_string(v) + " in no part");
    }
  }
  report.items.push_back(s1);

  PropertyResult s2 = passing("S2");
  for (DartId d = 0; d < g.dart_count() && s2.pass; ++d) {
    const auto a = part_of[g.tail(d)];
    const auto b = part_of[g.head(d)];
    if (a != kNone && b != kNone && a != 0 && b != 0 && a != b) {
      s2.pass = false;
      s2.witness = "edge " + std::to_string(g.tail(d)) + "-" + std::to_string(g.head(d)) + " joins parts " +
                   std::to_string(a) + " and " + std::to_string(b);
    }
  }
  report.items.push_back(s2);

  const double env = envelope(double(n), params.ell_k, params.envelope_constant);
  PropertyResult s3 = passing("S3");
  s3.measured = double(std::max(sep.pool().size(), p == 0 ? 0 : p - 1));
  s3.bound = env;
  if (double(sep.pool().size()) > env || double(p) > env + 1) {
    s3.pass = false;
    s3.witness = "|V0| = " + std::to_string(sep.pool().size()) + ", p = " + std::to_string(p);
  }
  report.items.push_back(s3);

  PropertyResult s4 = passing("S4");
  PropertyResult s5 = passing("S5");
  double boundary_total = 0;
  for (std::size_t i = 1; i <= p; ++i) {
    const std::size_t nbr = neighborhood(g, sep.parts[i]).size();
    boundary_total += double(nbr);
    const std::size_t size = params.part_size ? params.part_size(sep.parts[i]) : sep.parts[i].size() + nbr;
    s4.measured = std::max(s4.measured, double(size));
    if (params.part_bound != 0 && size > params.part_bound && s4.pass) {
      s4.pass = false;
      s4.witness = "part " + std::to_string(i) + " has size " + std::to_string(size);
    }
  }
  s4.bound = double(params.part_bound);
  report.items.push_back(s4);
  s5.measured = boundary_total;
  s5.bound = env;
  if (boundary_total > env) {
    s5.pass = false;
    s5.witness = "boundary total " + std::to_string(std::size_t(boundary_total));
  }
  report.items.push_back(s5);

  PropertyResult hooks = passing("hooks");
  if (sep.hooks.size() != p) {
    hooks = failing("hooks", "hook count differs from part count");
  }
  for (std::size_t i = 1; i <= p && hooks.pass; ++i) {
    const NodeId h = sep.hooks[i - 1];
    if (h == kNoNode) {
      if (!sep.pool().empty()) {
        hooks = failing("hooks", "part " + std::to_string(i) + " lacks a hook");
      }
      continue;
    }
    if (h >= n || part_of[h] != 0) {
      hooks = failing("hooks", "hook of part " + std::to_string(i) + " not in V0");
      continue;
    }
    const bool touches = std::any_of(g.rotation(h).begin(), g.rotation(h).end(),
                                     [&](NodeId w) { return part_of[w] == i; });
    if (!touches) {
      hooks = failing("hooks", "hook of part " + std::to_string(i) + " not adjacent to it");
    }
  }
  report.items.push_back(hooks);

  if (params.prev != nullptr) {
    const Separation &prev = *params.prev;
    const auto owner = owner_of(n, prev);
    PropertyResult r1 = passing("R1");
    for (NodeId v : prev.pool()) {
      if (v < n && part_of[v] != 0) {
        r1 = failing("R1", "node " + std::to_string(v) + " of U0 outside V0");
        break;
      }
    }
    report.items.push_back(r1);

    PropertyResult r2 = passing("R2");
    std::vector<std::uint32_t> home(p + 1, kNone);
    for (std::size_t i = 1; i <= p && r2.pass; ++i) {
      for (NodeId v : sep.parts[i]) {
        const auto j = v < n ? owner[v] : kNone;
        if (j == 0 || j == kNone || (home[i] != kNone && home[i] != j)) {
          r2 = failing("R2", "part " + std::to_string(i) + " not inside one coarse part");
          break;
        }
        home[i] = j;
      }
    }
    report.items.push_back(r2);

    PropertyResult r3 = passing("R3");
    if (r2.pass) {
      // Parts inside each coarse part must have consecutive indices.
      std::vector<std::size_t> first(prev.parts.size(), 0), last(prev.parts.size(), 0), count(prev.parts.size(), 0);
      for (std::size_t i = 1; i <= p; ++i) {
        const auto j = home[i];
        if (j == kNone) {
          continue;
        }
        if (count[j]++ == 0) {
          first[j] = i;
        }
        last[j] = i;
      }
      for (std::size_t j = 1; j < prev.parts.size(); ++j) {
        if (count[j] != 0 && last[j] - first[j] + 1 != count[j]) {
          r3 = failing("R3", "parts of coarse part " + std::to_string(j) + " are not consecutive");
          break;
        }
      }
    } else {
      r3 = failing("R3", "undefined without R2");
    }
    report.items.push_back(r3);
  }
  return report;
}

} // namespace sepcode
