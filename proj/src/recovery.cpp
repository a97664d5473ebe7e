#include "sepcode/recovery.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace sepcode {

namespace {

constexpr std::uint32_t kNone = ~std::uint32_t(0);

std::vector<std::uint32_t> part_index(std::size_t n, const Separation &s) {
  std::vector<std::uint32_t> of(n, kNone);
  for (std::uint32_t i = 0; i < s.parts.size(); ++i) {
    for (NodeId v : s.parts[i]) {
      if (v >= n || of[v] != kNone) {
        fail(ErrorCode::NotRefinement, "separation is not a partition of the nodes");
      }
      of[v] = i;
    }
  }
  return of;
}

// The range of fine parts inside each coarse part: first[j] .. first[j] + size[j] - 1.
struct Grouping {
  std::vector<std::size_t> first;
  std::vector<std::size_t> size;
};

Grouping group_fine_parts(const Separation &fine, const std::vector<std::uint32_t> &coarse_of) {
  Grouping gr;
  const std::size_t q = coarse_of.empty() ? 0 : *std::max_element(coarse_of.begin(), coarse_of.end()) + 1;
  gr.first.assign(q + 1, 0);
  gr.size.assign(q + 1, 0);
  std::uint32_t previous = 0;
  for (std::size_t i = 1; i <= fine.part_count(); ++i) {
    if (fine.parts[i].empty()) {
      fail(ErrorCode::NotRefinement, "empty fine part");
    }
    const std::uint32_t j = coarse_of[fine.parts[i].front()];
    for (NodeId v : fine.parts[i]) {
      if (coarse_of[v] != j || j == 0) {
        fail(ErrorCode::NotRefinement, "fine part " + std::to_string(i) + " crosses coarse parts");
      }
    }
    if (gr.size[j] == 0) {
      gr.first[j] = i;
    } else if (previous != j) {
      fail(ErrorCode::NotRefinement, "fine parts of coarse part " + std::to_string(j) + " are not consecutive");
    }
    ++gr.size[j];
    previous = j;
  }
  return gr;
}

NodeId local_of(const Subgraph &s, NodeId host) {
  const auto it = std::lower_bound(s.to_host.begin(), s.to_host.end(), host);
  if (it == s.to_host.end() || *it != host) {
    fail(ErrorCode::InconsistentLabels, "node missing from part graph");
  }
  return static_cast<NodeId>(it - s.to_host.begin());
}

void check_labeling(const Labeling &l, std::size_t size) {
  if (l.size() != size) {
    fail(ErrorCode::InconsistentLabels, "labeling size differs from part size");
  }
  std::vector<bool> seen(size, false);
  for (NodeId x : l) {
    if (x >= size || seen[x]) {
      fail(ErrorCode::InconsistentLabels, "labeling is not a bijection");
    }
    seen[x] = true;
  }
}

struct Context {
  std::vector<std::uint32_t> fine_of;
  std::vector<std::uint32_t> coarse_of;
  Grouping groups;
  std::vector<Subgraph> fine_parts;
  std::vector<Subgraph> coarse_parts;
};

Context make_context(const EmbeddedGraph &g, const Separation &fine, const Separation &coarse,
                     const std::vector<Labeling> &fine_labels) {
  Context c;
  c.fine_of = part_index(g.node_count(), fine);
  c.coarse_of = part_index(g.node_count(), coarse);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (c.fine_of[v] == kNone || c.coarse_of[v] == kNone) {
      fail(ErrorCode::NotRefinement, "separation misses node " + std::to_string(v));
    }
    if (c.coarse_of[v] == 0 && c.fine_of[v] != 0) {
      fail(ErrorCode::NotRefinement, "coarse pool node outside the fine pool");
    }
  }
  c.groups = group_fine_parts(fine, c.coarse_of);
  c.groups.first.resize(coarse.parts.size(), 0);
  c.groups.size.resize(coarse.parts.size(), 0);
  c.fine_parts = part_graphs(g, fine);
  c.coarse_parts = part_graphs(g, coarse);
  if (fine_labels.size() != fine.part_count()) {
    fail(ErrorCode::InconsistentLabels, "one labeling per fine part expected");
  }
  for (std::size_t i = 0; i < fine_labels.size(); ++i) {
    check_labeling(fine_labels[i], c.fine_parts[i].to_host.size());
  }
  return c;
}

} // namespace

std::vector<Subgraph> part_graphs(const EmbeddedGraph &g, const Separation &s) {
  std::vector<Subgraph> out;
  out.reserve(s.part_count());
  for (std::size_t i = 1; i <= s.part_count(); ++i) {
    out.push_back(boundary_subgraph(g, s.parts[i]));
  }
  return out;
}

std::vector<Labeling> lift_labelings(const EmbeddedGraph &g, const Separation &fine, const Separation &coarse,
                                     const std::vector<Labeling> &fine_labels) {
  const Context c = make_context(g, fine, coarse, fine_labels);
  std::vector<Labeling> out;
  for (std::size_t j = 1; j <= coarse.part_count(); ++j) {
    const Subgraph &cp = c.coarse_parts[j - 1];
    Labeling label(cp.to_host.size(), kNone);
    NodeId next = 0;
    for (NodeId x = 0; x < cp.to_host.size(); ++x) {
      if (c.fine_of[cp.to_host[x]] == 0) {
        label[x] = next++;
      }
    }
    for (std::size_t t = 0; t < c.groups.size[j]; ++t) {
      const std::size_t i = c.groups.first[j] + t;
      const Subgraph &fp = c.fine_parts[i - 1];
      // Interior nodes of V_i in order of their fine labels.
      std::vector<std::pair<NodeId, NodeId>> interior;
      for (NodeId x = 0; x < fp.to_host.size(); ++x) {
        if (c.fine_of[fp.to_host[x]] == i) {
          interior.emplace_back(fine_labels[i - 1][x], fp.to_host[x]);
        }
      }
      std::sort(interior.begin(), interior.end());
      for (const auto &[fine_label, host] : interior) {
        label[local_of(cp, host)] = next++;
      }
    }
    if (next != label.size()) {
      fail(ErrorCode::NotRefinement, "coarse part " + std::to_string(j) + " not covered by W and its fine parts");
    }
    out.push_back(std::move(label));
  }
  return out;
}

BitString RecString::serialize() const {
  const BitString parts[] = {join_serialized(rec1), join_serialized(rec2), join_serialized(rec3)};
  return join_serialized(parts);
}

RecString RecString::parse(const BitString &bits) {
  const auto streams = split_serialized(bits);
  if (streams.size() != 3) {
    fail(ErrorCode::Malformed, "recovery string must hold three streams");
  }
  RecString r;
  r.rec1 = split_serialized(streams[0]);
  r.rec2 = split_serialized(streams[1]);
  r.rec3 = split_serialized(streams[2]);
  if (r.rec2.size() != r.rec1.size() || r.rec3.size() != r.rec1.size()) {
    fail(ErrorCode::Malformed, "recovery streams disagree on the part count");
  }
  return r;
}

namespace {

// Counts of still-unplaced slots, for rank and select in O(log d).
class Fenwick {
public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {
    for (std::size_t i = 1; i <= n; ++i) {
      ++tree_[i];
      const std::size_t parent = i + (i & (~i + 1));
      if (parent <= n) {
        tree_[parent] += tree_[i];
      }
    }
  }
  void remove(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) {
      --tree_[i];
    }
  }
  // Unplaced slots before i.
  [[nodiscard]] std::size_t rank(std::size_t i) const {
    std::size_t sum = 0;
    for (; i > 0; i -= i & (~i + 1)) {
      sum += tree_[i];
    }
    return sum;
  }
  // The k-th unplaced slot, counting from 0.
  [[nodiscard]] std::size_t select(std::size_t k) const {
    std::size_t pos = 0;
    for (std::size_t step = std::bit_floor(tree_.size()); step > 0; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= k) {
        pos += step;
        k -= tree_[pos];
      }
    }
    return pos;
  }

private:
  std::vector<std::uint32_t> tree_;
};

// Neighbours of a W node in the order both sides agree on: W neighbours by
// ascending label, then each fine part's cyclic run starting at its smallest label.
struct Enumeration {
  std::vector<NodeId> items;
  std::vector<std::uint32_t> run_begin; // kNone for W items
  std::vector<std::uint32_t> run_size;

  void add_w(NodeId y) {
    items.push_back(y);
    run_begin.push_back(kNone);
    run_size.push_back(0);
  }
  void add_run(std::vector<NodeId> run) {
    const auto first = std::min_element(run.begin(), run.end()) - run.begin();
    std::rotate(run.begin(), run.begin() + first, run.end());
    const auto begin = std::uint32_t(items.size());
    for (NodeId y : run) {
      items.push_back(y);
      run_begin.push_back(begin);
      run_size.push_back(std::uint32_t(run.size()));
    }
  }
  [[nodiscard]] std::uint32_t successor(std::size_t e) const {
    if (run_begin[e] == kNone) {
      return kNone;
    }
    return run_begin[e] + std::uint32_t((e - run_begin[e] + 1) % run_size[e]);
  }
};

// Slot of each coarse label in an enumeration; cleared after each use.
class SlotMap {
public:
  explicit SlotMap(std::size_t size) : slot_(size, kNone) {}
  void assign(const std::vector<NodeId> &items) {
    for (std::size_t e = 0; e < items.size(); ++e) {
      if (items[e] >= slot_.size() || slot_[items[e]] != kNone) {
        clear(items, e);
        fail(ErrorCode::InconsistentLabels, "repeated neighbour around a W node");
      }
      slot_[items[e]] = std::uint32_t(e);
    }
  }
  void clear(const std::vector<NodeId> &items, std::size_t count) {
    for (std::size_t e = 0; e < count; ++e) {
      slot_[items[e]] = kNone;
    }
  }
  [[nodiscard]] std::uint32_t operator[](NodeId x) const { return slot_[x]; }

private:
  std::vector<std::uint32_t> slot_;
};

// A rotation as a walk over the enumeration from slot 0. Each step writes a
// flag when the in-run successor is still free; if that flag is 0, or there
// is no free successor, the rank of the next slot among the free ones follows.
void encode_walk(BitString &out, const Enumeration &en, const std::vector<std::uint32_t> &walk) {
  const std::size_t d = walk.size();
  Fenwick free(d);
  std::vector<bool> placed(d, false);
  placed[walk[0]] = true;
  free.remove(walk[0]);
  for (std::size_t pos = 1; pos < d; ++pos) {
    const std::size_t remaining = d - pos;
    const std::uint32_t y = walk[pos];
    if (remaining > 1) {
      const std::uint32_t s = en.successor(walk[pos - 1]);
      if (s != kNone && !placed[s]) {
        out.push_back(y == s);
        if (y != s) {
          std::size_t k = free.rank(y);
          k -= free.rank(s) < k ? 1 : 0;
          out.append_bits(k, index_width(remaining - 1));
        }
      } else {
        out.append_bits(free.rank(y), index_width(remaining));
      }
    }
    placed[y] = true;
    free.remove(y);
  }
}

std::vector<std::uint32_t> decode_walk(BitReader &in, const Enumeration &en) {
  const std::size_t d = en.items.size();
  std::vector<std::uint32_t> walk;
  if (d == 0) {
    return walk;
  }
  Fenwick free(d);
  std::vector<bool> placed(d, false);
  walk.push_back(0);
  placed[0] = true;
  free.remove(0);
  for (std::size_t pos = 1; pos < d; ++pos) {
    const std::size_t remaining = d - pos;
    std::size_t y = 0;
    if (remaining == 1) {
      y = free.select(0);
    } else {
      const std::uint32_t s = en.successor(walk.back());
      if (s != kNone && !placed[s]) {
        if (in.read_bit()) {
          y = s;
        } else {
          std::size_t k = in.read_bits(index_width(remaining - 1));
          if (k >= remaining - 1) {
            fail(ErrorCode::InconsistentLabels, "rotation step out of range");
          }
          k += k >= free.rank(s) ? 1 : 0;
          y = free.select(k);
        }
      } else {
        const std::size_t k = in.read_bits(index_width(remaining));
        if (k >= remaining) {
          fail(ErrorCode::InconsistentLabels, "rotation step out of range");
        }
        y = free.select(k);
      }
    }
    walk.push_back(std::uint32_t(y));
    placed[y] = true;
    free.remove(y);
  }
  return walk;
}

} // namespace

RecString build_rec(const EmbeddedGraph &g, const Separation &fine, const Separation &coarse,
                    const std::vector<Labeling> &fine_labels, const std::vector<Labeling> &coarse_labels) {
  const Context c = make_context(g, fine, coarse, fine_labels);
  if (coarse_labels.size() != coarse.part_count()) {
    fail(ErrorCode::InconsistentLabels, "one labeling per coarse part expected");
  }
  RecString rec;
  for (std::size_t j = 1; j <= coarse.part_count(); ++j) {
    const Subgraph &cp = c.coarse_parts[j - 1];
    const Labeling &label = coarse_labels[j - 1];
    check_labeling(label, cp.to_host.size());
    const EmbeddedGraph &h = cp.graph;
    // Cell of a local node: its fine part, or 0 for W.
    std::vector<std::uint32_t> cell(h.node_count());
    std::vector<NodeId> w_by_label;
    for (NodeId x = 0; x < h.node_count(); ++x) {
      cell[x] = c.fine_of[cp.to_host[x]];
      if (cell[x] == 0) {
        w_by_label.push_back(x);
      }
    }
    const std::size_t w_count = w_by_label.size();
    std::sort(w_by_label.begin(), w_by_label.end(), [&](NodeId a, NodeId b) { return label[a] < label[b]; });
    for (NodeId x : w_by_label) {
      if (label[x] >= w_count) {
        fail(ErrorCode::InconsistentLabels, "W nodes must carry the smallest coarse labels");
      }
    }

    BitString r1;
    BitString r3;
    encode_uint(r1, w_count);
    SlotMap slots(h.node_count());
    for (NodeId x : w_by_label) {
      const NodeId w = label[x];
      std::vector<NodeId> w_side;
      std::map<std::uint32_t, std::vector<NodeId>> runs;
      for (NodeId y : h.rotation(x)) {
        if (cell[y] == 0) {
          w_side.push_back(label[y]);
        } else {
          runs[cell[y]].push_back(label[y]);
        }
      }
      std::sort(w_side.begin(), w_side.end());
      const auto up = std::upper_bound(w_side.begin(), w_side.end(), w);
      encode_uint(r1, std::size_t(w_side.end() - up));
      const unsigned width = index_width(w_count - w - 1);
      for (auto it = up; it != w_side.end(); ++it) {
        r1.append_bits(*it - w - 1, width);
      }
      Enumeration en;
      for (NodeId y : w_side) {
        en.add_w(y);
      }
      for (auto &[i, run] : runs) {
        en.add_run(std::move(run));
      }
      if (en.items.empty()) {
        continue;
      }
      slots.assign(en.items);
      std::vector<std::uint32_t> walk;
      for (NodeId y : h.rotation(x)) {
        walk.push_back(slots[label[y]]);
      }
      slots.clear(en.items, en.items.size());
      std::rotate(walk.begin(), std::find(walk.begin(), walk.end(), 0U), walk.end());
      encode_walk(r3, en, walk);
    }

    BitString r2;
    const unsigned label_width = index_width(w_count);
    for (std::size_t t = 0; t < c.groups.size[j]; ++t) {
      const std::size_t i = c.groups.first[j] + t;
      const Subgraph &fp = c.fine_parts[i - 1];
      std::vector<NodeId> coarse_by_fine(fp.to_host.size(), kNone);
      for (NodeId x = 0; x < fp.to_host.size(); ++x) {
        if (c.fine_of[fp.to_host[x]] != i) {
          coarse_by_fine[fine_labels[i - 1][x]] = label[local_of(cp, fp.to_host[x])];
        }
      }
      // Boundary nodes as a mask or as a list of fine labels, whichever is shorter.
      std::vector<NodeId> listed;
      for (NodeId a = 0; a < coarse_by_fine.size(); ++a) {
        if (coarse_by_fine[a] != kNone) {
          listed.push_back(a);
        }
      }
      const unsigned fine_width = index_width(coarse_by_fine.size());
      const bool as_list = uint_code_length(listed.size()) + listed.size() * fine_width < coarse_by_fine.size();
      r2.push_back(as_list);
      if (as_list) {
        encode_uint(r2, listed.size());
        for (NodeId a : listed) {
          r2.append_bits(a, fine_width);
        }
      } else {
        for (NodeId b : coarse_by_fine) {
          r2.push_back(b != kNone);
        }
      }
      for (NodeId b : coarse_by_fine) {
        if (b != kNone) {
          r2.append_bits(b, label_width);
        }
      }
    }
    rec.rec1.push_back(std::move(r1));
    rec.rec2.push_back(std::move(r2));
    rec.rec3.push_back(std::move(r3));
  }
  return rec;
}

std::vector<EmbeddedGraph> apply_rec(const RecString &rec, const std::vector<std::vector<EmbeddedGraph>> &fine_by_part) {
  if (fine_by_part.size() != rec.part_count()) {
    fail(ErrorCode::Malformed, "recovery string part count differs from the part tree");
  }
  std::vector<EmbeddedGraph> out;
  out.reserve(rec.part_count());
  for (std::size_t j = 0; j < rec.part_count(); ++j) {
    const auto &fine = fine_by_part[j];

    // Rec1: edges among W, each listed once from its smaller end.
    BitReader r1(rec.rec1[j]);
    const std::uint64_t w_count = decode_uint(r1);
    if (w_count > rec.rec1[j].size()) {
      fail(ErrorCode::Malformed, "W size exceeds its encoding");
    }
    std::vector<std::vector<NodeId>> w_adj(w_count);
    for (std::uint64_t w = 0; w < w_count; ++w) {
      const std::uint64_t ups = decode_uint(r1);
      if (ups > w_count - w - 1) {
        fail(ErrorCode::Malformed, "W degree out of range");
      }
      const unsigned width = index_width(w_count - w - 1);
      for (std::uint64_t k = 0; k < ups; ++k) {
        const std::uint64_t y = w + 1 + r1.read_bits(width);
        if (y >= w_count) {
          fail(ErrorCode::Malformed, "W neighbour out of range");
        }
        w_adj[w].push_back(NodeId(y));
        w_adj[y].push_back(NodeId(w));
      }
    }
    if (!r1.at_end()) {
      fail(ErrorCode::Malformed, "trailing bits in W adjacency");
    }
    for (auto &a : w_adj) {
      std::sort(a.begin(), a.end());
    }

    // Rec2: boundary mask and coarse labels per fine part.
    BitReader r2(rec.rec2[j]);
    const unsigned label_width = index_width(w_count);
    std::vector<std::vector<NodeId>> to_coarse(fine.size());
    std::vector<bool> taken(w_count, false);
    for (std::size_t t = 0; t < fine.size(); ++t) {
      const std::size_t m = fine[t].node_count();
      std::vector<bool> boundary(m, false);
      if (r2.read_bit()) {
        const std::uint64_t count = decode_uint(r2);
        if (count > m) {
          fail(ErrorCode::Malformed, "boundary list longer than its part");
        }
        std::uint64_t previous = 0;
        for (std::uint64_t k = 0; k < count; ++k) {
          const std::uint64_t a = r2.read_bits(index_width(m));
          if (a >= m || (k > 0 && a <= previous)) {
            fail(ErrorCode::Malformed, "boundary list out of order");
          }
          boundary[a] = true;
          previous = a;
        }
      } else {
        for (std::size_t a = 0; a < m; ++a) {
          boundary[a] = r2.read_bit();
        }
      }
      to_coarse[t].assign(m, kNone);
      for (std::size_t a = 0; a < m; ++a) {
        if (!boundary[a]) {
          continue;
        }
        const std::uint64_t b = w_count == 0 ? 0 : r2.read_bits(label_width);
        if (b >= w_count || taken[b]) {
          fail(ErrorCode::InconsistentLabels, "boundary label out of range");
        }
        taken[b] = true;
        to_coarse[t][a] = NodeId(b);
      }
      for (NodeId b : to_coarse[t]) {
        if (b != kNone) {
          taken[b] = false;
        }
      }
    }
    if (!r2.at_end()) {
      fail(ErrorCode::Malformed, "trailing bits in boundary labels");
    }
    NodeId next = static_cast<NodeId>(w_count);
    for (auto &map : to_coarse) {
      for (auto &x : map) {
        if (x == kNone) {
          x = next++;
        }
      }
    }
    const std::size_t size = next;

    // Runs around each W node from the fine parts, in part order.
    std::vector<std::vector<std::vector<NodeId>>> runs(w_count);
    std::vector<std::vector<NodeId>> rot(size);
    for (std::size_t t = 0; t < fine.size(); ++t) {
      const EmbeddedGraph &f = fine[t];
      for (NodeId x = 0; x < f.node_count(); ++x) {
        std::vector<NodeId> mapped;
        mapped.reserve(f.degree(x));
        for (NodeId y : f.rotation(x)) {
          mapped.push_back(to_coarse[t][y]);
        }
        const NodeId cx = to_coarse[t][x];
        if (cx >= w_count) {
          rot[cx] = std::move(mapped);
        } else if (!mapped.empty()) {
          runs[cx].push_back(std::move(mapped));
        }
      }
    }

    // Rec3: one walk per W node.
    BitReader r3(rec.rec3[j]);
    SlotMap slots(size);
    for (std::size_t w = 0; w < w_count; ++w) {
      Enumeration en;
      for (NodeId y : w_adj[w]) {
        en.add_w(y);
      }
      for (auto &run : runs[w]) {
        en.add_run(std::move(run));
      }
      slots.assign(en.items);
      slots.clear(en.items, en.items.size());
      for (std::uint32_t e : decode_walk(r3, en)) {
        rot[w].push_back(en.items[e]);
      }
    }
    if (!r3.at_end()) {
      fail(ErrorCode::Malformed, "trailing bits in rotation walks");
    }
    try {
      out.push_back(EmbeddedGraph::from_rotations(rot));
    } catch (const Error &e) {
      fail(ErrorCode::InconsistentLabels, std::string("rebuilt part is not a valid embedding: ") + e.what());
    }
  }
  return out;
}

} // namespace sepcode
