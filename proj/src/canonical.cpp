#include "sepcode/embgraph.hpp"

#include <algorithm>
#include <deque>

namespace sepcode {

namespace {

// Breadth-first code from start dart s, abandoned as soon as it exceeds `best`.
// Returns true and fills `code`/`order` when the result is strictly smaller.
bool traverse(const EmbeddedGraph &g, DartId s, const std::vector<std::uint32_t> &best,
              std::vector<std::uint32_t> &code, std::vector<NodeId> &order, std::vector<std::uint32_t> &label,
              std::vector<DartId> &ref) {
  std::fill(label.begin(), label.end(), kNoNode);
  code.clear();
  order.clear();
  bool smaller = best.empty();
  auto emit = [&](std::uint32_t x) {
    const std::size_t i = code.size();
    code.push_back(x);
    if (smaller) {
      return true;
    }
    if (x < best[i]) {
      smaller = true;
      return true;
    }
    return x == best[i];
  };

  const NodeId root = g.tail(s);
  label[root] = 0;
  ref[root] = s;
  order.push_back(root);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const NodeId v = order[k];
    if (!emit(g.degree(v))) {
      return false;
    }
    DartId d = ref[v];
    for (std::uint32_t i = 0; i < g.degree(v); ++i, d = g.next_cw(d)) {
      const NodeId w = g.head(d);
      if (label[w] == kNoNode) {
        label[w] = static_cast<std::uint32_t>(order.size());
        ref[w] = g.twin(d);
        order.push_back(w);
      }
      if (!emit(label[w])) {
        return false;
      }
    }
  }
  return smaller;
}

CanonicalForm connected_form(const EmbeddedGraph &g) {
  CanonicalForm best;
  const std::size_t n = g.node_count();
  if (n == 0) {
    return best;
  }
  if (n == 1) {
    best.code = {0};
    best.order = {0};
    return best;
  }
  const std::uint32_t min_deg = [&] {
    std::uint32_t m = ~0U;
    for (NodeId v = 0; v < n; ++v) {
      m = std::min(m, g.degree(v));
    }
    return m;
  }();
  std::vector<std::uint32_t> label(n);
  std::vector<DartId> ref(n);
  std::vector<std::uint32_t> code;
  std::vector<NodeId> order;
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) != min_deg) {
      continue;
    }
    for (DartId s = g.first_dart(v); s < g.first_dart(v) + g.degree(v); ++s) {
      if (traverse(g, s, best.code, code, order, label, ref)) {
        std::swap(best.code, code);
        std::swap(best.order, order);
      }
    }
  }
  return best;
}

} // namespace

CanonicalForm canonical_form(const EmbeddedGraph &g) {
  std::vector<std::uint32_t> comp;
  const std::size_t c = connected_components(g, comp);
  if (c <= 1) {
    return connected_form(g);
  }
  std::vector<std::vector<NodeId>> members(c);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    members[comp[v]].push_back(v);
  }
  std::vector<std::pair<CanonicalForm, std::vector<NodeId>>> parts;
  parts.reserve(c);
  for (const auto &m : members) {
    Subgraph sub = induced(g, m);
    parts.emplace_back(connected_form(sub.graph), std::move(sub.to_host));
  }
  std::sort(parts.begin(), parts.end(), [](const auto &a, const auto &b) {
    if (a.second.size() != b.second.size()) {
      return a.second.size() < b.second.size();
    }
    return a.first.code < b.first.code;
  });
  CanonicalForm out;
  out.code = {kDisconnectedTag, static_cast<std::uint32_t>(c)};
  for (const auto &[form, hosts] : parts) {
    out.code.push_back(static_cast<std::uint32_t>(hosts.size()));
    out.code.insert(out.code.end(), form.code.begin(), form.code.end());
    for (NodeId local : form.order) {
      out.order.push_back(hosts[local]);
    }
  }
  return out;
}

BitString canonical_code(const EmbeddedGraph &g) {
  BitString out;
  for (std::uint32_t x : canonical_form(g).code) {
    encode_uint(out, x);
  }
  return out;
}

EmbeddedGraph graph_from_code(std::span<const std::uint32_t> code) {
  std::vector<std::vector<NodeId>> rot;
  std::size_t i = 0;
  while (i < code.size()) {
    const std::uint32_t deg = code[i++];
    if (deg > code.size() - i) {
      fail(ErrorCode::Malformed, "canonical code truncated");
    }
    rot.emplace_back(code.begin() + static_cast<std::ptrdiff_t>(i),
                     code.begin() + static_cast<std::ptrdiff_t>(i + deg));
    i += deg;
  }
  return EmbeddedGraph::from_rotations(rot);
}

} // namespace sepcode
