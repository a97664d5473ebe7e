#include "sepcode/codec.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

#include "sepcode/patcher.hpp"
#include "sepcode/recovery.hpp"

namespace sepcode {
namespace {

constexpr std::uint64_t kMagic = 0x53434743; // "SCGC"
constexpr std::size_t kMaxLevels = 8;
constexpr std::size_t kMaxNameLength = 64;
constexpr std::uint8_t kFlagByReference = 1;
constexpr std::uint8_t kFlagKeepLabels = 2;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void malformed(const std::string &what) { fail(ErrorCode::Malformed, what); }

struct Leaf {
  BitString bits;
  Labeling labeling;
  std::size_t index_bits = 0;
  std::size_t size_bits = 0;
  std::size_t fix_bits = 0;
};

// m - 1 in ceil(log2 cap) bits, the table index, then the fix list for patched classes.
Leaf encode_leaf(const ClassTable &table, const GraphClass &cls, const EmbeddedGraph &host, const Subgraph &part) {
  Leaf leaf;
  leaf.bits.append_bits(part.graph.node_count() - 1, index_width(table.cap()));
  leaf.size_bits = leaf.bits.size();
  if (!cls.patched) {
    Optcode opt = optcode(table, cls, part.graph);
    leaf.index_bits = opt.bits.size();
    leaf.bits.append(opt.bits);
    leaf.labeling = std::move(opt.labeling);
    return leaf;
  }
  const Patch patch = complete(part.graph, induced(host, part.to_host).graph);
  Optcode opt = optcode(table, cls, patch.completed);
  std::vector<Edge> fix;
  fix.reserve(patch.fix.size());
  for (const auto &[a, b] : patch.fix) {
    const NodeId x = opt.labeling[a];
    const NodeId y = opt.labeling[b];
    fix.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(fix.begin(), fix.end());
  const BitString fix_bits = encode_fix(relabel(patch.completed, opt.labeling), fix);
  leaf.index_bits = opt.bits.size();
  leaf.fix_bits = fix_bits.size();
  leaf.bits.append(opt.bits);
  leaf.bits.append(fix_bits);
  leaf.labeling = std::move(opt.labeling);
  return leaf;
}

EmbeddedGraph decode_leaf(const ClassTable &table, const GraphClass &cls, const BitString &bits) {
  BitReader in(bits);
  const std::uint64_t m = in.read_bits(index_width(table.cap())) + 1;
  if (m > table.cap() || table.count(m) == 0) {
    malformed("part size " + std::to_string(m) + " has no table entries");
  }
  EmbeddedGraph h = decode_optcode(table, m, in);
  if (cls.patched) {
    h = apply_fix(h, decode_fix(h, in));
  }
  if (!in.at_end()) {
    malformed("trailing bits after a part code");
  }
  return h;
}

// Index of the coarse part that contains each fine part.
std::vector<std::size_t> fine_owners(const Separation &fine, const Separation &coarse, std::size_t n) {
  std::vector<std::size_t> part_of(n, 0);
  for (std::size_t j = 1; j < coarse.parts.size(); ++j) {
    for (NodeId v : coarse.parts[j]) {
      part_of[v] = j - 1;
    }
  }
  std::vector<std::size_t> owner;
  for (std::size_t i = 1; i < fine.parts.size(); ++i) {
    owner.push_back(part_of[fine.parts[i].front()]);
  }
  return owner;
}

struct ComponentCode {
  BitString body;
  Labeling labeling;
};

ComponentCode encode_component(const EmbeddedGraph &g, const GraphClass &cls, const ClassTable &table,
                               std::size_t literal_levels, CodecStats &stats, bool record_levels) {
  auto start = Clock::now();
  const std::vector<Separation> levels = build_levels(g, cls, table.cap(), literal_levels);
  stats.seconds_separate += seconds_since(start);
  const std::size_t depth = levels.size() - 1;
  if (record_levels) {
    stats.levels.clear();
    for (std::size_t k = 1; k <= depth; ++k) {
      LevelStats level{levels[k].pool().size(), levels[k].part_count(), 0};
      for (std::size_t i = 1; i < levels[k].parts.size(); ++i) {
        level.boundary += neighborhood(g, levels[k].parts[i]).size();
      }
      stats.levels.push_back(level);
    }
  }

  start = Clock::now();
  std::vector<BitString> codes;
  std::vector<Labeling> labels;
  const auto add_leaf = [&](const Subgraph &part) {
    Leaf leaf = encode_leaf(table, cls, g, part);
    stats.part_code_bits += leaf.index_bits;
    stats.size_bits += leaf.size_bits;
    stats.fix_bits += leaf.fix_bits;
    stats.leaf_sizes.push_back(part.graph.node_count());
    codes.push_back(std::move(leaf.bits));
    labels.push_back(std::move(leaf.labeling));
  };
  if (depth == 0) {
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), 0);
    add_leaf(Subgraph{g, std::move(all)});
  } else {
    for (const Subgraph &part : part_graphs(g, levels[depth])) {
      add_leaf(part);
    }
  }
  stats.seconds_leaves += seconds_since(start);

  start = Clock::now();
  std::vector<BitString> recs(depth + 1);
  for (std::size_t k = depth; k >= 1; --k) {
    std::vector<Labeling> coarse_labels = lift_labelings(g, levels[k], levels[k - 1], labels);
    recs[k] = build_rec(g, levels[k], levels[k - 1], labels, coarse_labels).serialize();
    stats.rec_bits += recs[k].size();
    const std::vector<std::size_t> owner = fine_owners(levels[k], levels[k - 1], g.node_count());
    std::vector<std::vector<BitString>> children(levels[k - 1].part_count());
    for (std::size_t i = 0; i < codes.size(); ++i) {
      children[owner[i]].push_back(std::move(codes[i]));
    }
    codes.clear();
    for (const auto &c : children) {
      codes.push_back(join_serialized(c));
    }
    labels = std::move(coarse_labels);
  }
  stats.seconds_rec += seconds_since(start);

  recs[0] = std::move(codes.front());
  ComponentCode out;
  encode_uint(out.body, g.node_count());
  encode_uint(out.body, depth);
  out.body.append(join_serialized(recs));
  out.labeling = std::move(labels.front());
  return out;
}

EmbeddedGraph decode_component(BitReader &in, const GraphClass &cls, const ClassTable &table) {
  const std::uint64_t n = decode_uint(in);
  const std::uint64_t depth = decode_uint(in);
  if (n == 0 || n > (table.cap() + 1) * (in.remaining() + 1)) {
    malformed("component size " + std::to_string(n) + " does not fit the body");
  }
  if (depth > kMaxLevels) {
    malformed("level count " + std::to_string(depth) + " above " + std::to_string(kMaxLevels));
  }
  const std::vector<BitString> segments = read_segmented(in);
  if (segments.size() != depth + 1) {
    malformed("component holds " + std::to_string(segments.size()) + " segments, expected " +
              std::to_string(depth + 1));
  }
  std::vector<BitString> codes{segments.front()};
  std::vector<std::vector<std::size_t>> fanout(depth + 1);
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<BitString> next;
    for (const BitString &code : codes) {
      std::vector<BitString> kids = split_serialized(code);
      fanout[k].push_back(kids.size());
      for (auto &kid : kids) {
        next.push_back(std::move(kid));
      }
    }
    codes = std::move(next);
  }
  std::vector<EmbeddedGraph> graphs;
  graphs.reserve(codes.size());
  for (const BitString &code : codes) {
    graphs.push_back(decode_leaf(table, cls, code));
  }
  for (std::size_t k = depth; k >= 1; --k) {
    const RecString rec = RecString::parse(segments[k]);
    if (rec.part_count() != fanout[k].size()) {
      malformed("recovery string covers " + std::to_string(rec.part_count()) + " parts, expected " +
                std::to_string(fanout[k].size()));
    }
    std::vector<std::vector<EmbeddedGraph>> grouped(fanout[k].size());
    std::size_t next = 0;
    for (std::size_t j = 0; j < fanout[k].size(); ++j) {
      for (std::size_t c = 0; c < fanout[k][j]; ++c) {
        grouped[j].push_back(std::move(graphs[next++]));
      }
    }
    graphs = apply_rec(rec, grouped);
  }
  if (graphs.size() != 1 || graphs.front().node_count() != n) {
    malformed("component decodes to the wrong node count");
  }
  return std::move(graphs.front());
}

struct Header {
  std::uint8_t flags = 0;
  std::string class_name;
  std::size_t cap = 0;
  std::size_t nodes = 0;
  std::size_t components = 0;
};

// Magic, version and flags, then the length of the rest, which must match exactly.
Header read_header(BitReader &in) {
  if (in.remaining() < 48) {
    fail(ErrorCode::Truncated, "container shorter than its header");
  }
  if (in.read_bits(32) != kMagic) {
    malformed("bad container magic");
  }
  const auto version = in.read_bits(8);
  if (version != kContainerVersion) {
    fail(ErrorCode::VersionMismatch, "container version " + std::to_string(version) + ", expected " +
                                         std::to_string(kContainerVersion));
  }
  Header h;
  h.flags = std::uint8_t(in.read_bits(8));
  if ((h.flags & ~(kFlagByReference | kFlagKeepLabels)) != 0) {
    malformed("unknown container flags");
  }
  const std::uint64_t length = decode_uint(in);
  if (length != in.remaining()) {
    fail(length > in.remaining() ? ErrorCode::Truncated : ErrorCode::Malformed,
         "container length field disagrees with its size");
  }
  const std::uint64_t name_length = decode_uint(in);
  if (name_length == 0 || name_length > kMaxNameLength) {
    malformed("bad class name length");
  }
  for (std::uint64_t i = 0; i < name_length; ++i) {
    h.class_name.push_back(char(in.read_bits(8)));
  }
  h.cap = decode_uint(in);
  h.nodes = decode_uint(in);
  if (decode_uint(in) != 0) {
    fail(ErrorCode::GenusTooLarge, "container declares a positive genus");
  }
  h.components = decode_uint(in);
  if (h.cap == 0 || h.cap > kMaxStoredCap) {
    malformed("bad table cap " + std::to_string(h.cap));
  }
  if (h.nodes == 0 || h.components == 0 || h.components > h.nodes ||
      h.nodes > (h.cap + 1) * (in.remaining() + 1)) {
    malformed("bad node or component count");
  }
  return h;
}

std::size_t table_bits_for(const GraphClass &cls, std::size_t cap, std::size_t max_cap) {
  static std::map<std::pair<std::string, std::size_t>, std::size_t> sizes;
  const auto key = std::make_pair(cls.name, cap);
  const auto it = sizes.find(key);
  if (it != sizes.end()) {
    return it->second;
  }
  const std::size_t bits = serialize_table(cached_table(cls, cap, max_cap)).size();
  sizes.emplace(key, bits);
  return bits;
}

} // namespace

std::vector<Separation> build_levels(const EmbeddedGraph &g, const GraphClass &cls, std::size_t cap,
                                     std::size_t literal_levels) {
  std::vector<Separation> levels{trivial_separation(g)};
  if (g.node_count() <= cap) {
    return levels;
  }
  for (std::size_t k = 1; k <= literal_levels; ++k) {
    levels.push_back(refine(g, levels.back(), k));
  }
  const PartFits fits = [&](const NodeSet &v) {
    const std::size_t size = v.size() + neighborhood(g, v).size();
    return size <= cap && (!cls.patched || size >= 3);
  };
  levels.push_back(refine_to_fit(g, levels.back(), literal_levels + 1, fits));
  return levels;
}

std::size_t choose_cap(const GraphClass &cls, std::size_t n, const CodecConfig &config) {
  if (config.cap != 0) {
    return config.cap;
  }
  const std::size_t limit = std::min(config.max_cap, enumeration_limit(cls));
  if (config.table_by_reference) {
    return std::max<std::size_t>(limit, 1);
  }
  const std::size_t budget = std::max(n, kTableBudgetFloor);
  std::size_t cap = 1;
  while (cap < limit && table_bits_for(cls, cap + 1, config.max_cap) <= budget) {
    ++cap;
  }
  return cap;
}

Encoded encode(const EmbeddedGraph &g, const GraphClass &cls, const CodecConfig &config) {
  const std::size_t n = g.node_count();
  if (n == 0) {
    fail(ErrorCode::EmptyInput, "cannot encode an empty graph");
  }
  if (const std::size_t gen = genus(g); gen > 0) {
    fail(ErrorCode::GenusTooLarge, "genus " + std::to_string(gen) + " above 0");
  }
  if (!cls.member(g)) {
    fail(ErrorCode::NotInClass, "input is not in class " + cls.name);
  }
  if (config.literal_levels + 1 > kMaxLevels) {
    fail(ErrorCode::CapInfeasible, "too many literal levels");
  }
  Encoded out;
  CodecStats &stats = out.stats;
  stats.nodes = n;
  stats.cap = choose_cap(cls, n, config);
  const ClassTable &table = cached_table(cls, stats.cap, std::max(config.max_cap, stats.cap));

  std::vector<std::uint32_t> component;
  const std::size_t count = connected_components(g, component);
  std::vector<NodeSet> members(count);
  for (NodeId v = 0; v < n; ++v) {
    members[component[v]].push_back(v);
  }
  std::size_t largest = 0;
  for (std::size_t c = 1; c < count; ++c) {
    largest = members[c].size() > members[largest].size() ? c : largest;
  }

  std::vector<BitString> bodies;
  out.labeling.assign(n, kNoNode);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < count; ++c) {
    const Subgraph sub = induced(g, members[c]);
    ComponentCode code = encode_component(sub.graph, cls, table, config.literal_levels, stats, c == largest);
    for (NodeId x = 0; x < sub.to_host.size(); ++x) {
      out.labeling[sub.to_host[x]] = NodeId(offset + code.labeling[x]);
    }
    offset += sub.to_host.size();
    bodies.push_back(std::move(code.body));
  }

  BitString rest;
  encode_uint(rest, cls.name.size());
  for (char ch : cls.name) {
    rest.append_bits(std::uint8_t(ch), 8);
  }
  encode_uint(rest, stats.cap);
  encode_uint(rest, n);
  encode_uint(rest, 0);
  encode_uint(rest, count);
  const std::size_t fields_bits = rest.size();
  if (!config.table_by_reference) {
    const BitString blob = serialize_table(table);
    stats.table_bits = blob.size();
    rest.append(blob);
  }
  rest.append(join_serialized(bodies));
  if (config.keep_labels) {
    const unsigned width = index_width(n);
    std::vector<NodeId> original(n);
    for (NodeId v = 0; v < n; ++v) {
      original[out.labeling[v]] = v;
    }
    for (NodeId v : original) {
      rest.append_bits(v, width);
    }
    stats.label_bits = std::size_t(width) * n;
    std::iota(out.labeling.begin(), out.labeling.end(), 0);
  }

  std::uint8_t flags = 0;
  flags |= config.table_by_reference ? kFlagByReference : 0;
  flags |= config.keep_labels ? kFlagKeepLabels : 0;
  out.bits.append_bits(kMagic, 32);
  out.bits.append_bits(kContainerVersion, 8);
  out.bits.append_bits(flags, 8);
  encode_uint(out.bits, rest.size());
  stats.header_bits = out.bits.size() + fields_bits;
  out.bits.append(rest);

  stats.total_bits = out.bits.size();
  stats.prefix_bits = stats.total_bits - stats.header_bits - stats.table_bits - stats.part_code_bits -
                      stats.size_bits - stats.fix_bits - stats.rec_bits - stats.label_bits;
  return out;
}

EmbeddedGraph decode(const BitString &container, const DecodeOptions &options) {
  BitReader in(container);
  const Header h = read_header(in);
  const GraphClass &cls = graph_class(h.class_name);
  ClassTable embedded;
  const ClassTable *table = nullptr;
  if ((h.flags & kFlagByReference) != 0) {
    if (h.cap > options.max_cap) {
      fail(ErrorCode::CapTooLarge, "container asks for a table of cap " + std::to_string(h.cap));
    }
    table = &cached_table(cls, h.cap, options.max_cap);
  } else {
    embedded = read_table(in);
    if (embedded.class_name() != cls.name || embedded.cap() != h.cap) {
      malformed("embedded table does not match the header");
    }
    table = &embedded;
  }

  const std::vector<BitString> bodies = read_segmented(in);
  if (bodies.size() != h.components) {
    malformed("component count disagrees with the header");
  }
  std::vector<EmbeddedGraph> parts;
  std::size_t total = 0;
  for (const BitString &body : bodies) {
    BitReader br(body);
    parts.push_back(decode_component(br, cls, *table));
    if (!br.at_end()) {
      malformed("trailing bits after a component");
    }
    total += parts.back().node_count();
    if (total > h.nodes) {
      malformed("components exceed the declared node count");
    }
  }
  if (total != h.nodes) {
    malformed("components fall short of the declared node count");
  }
  EmbeddedGraph g = parts.size() == 1 ? std::move(parts.front()) : disjoint_union(parts);
  if ((h.flags & kFlagKeepLabels) != 0) {
    const unsigned width = index_width(h.nodes);
    if (in.remaining() != std::size_t(width) * h.nodes) {
      malformed("label block has the wrong length");
    }
    std::vector<NodeId> original(h.nodes);
    std::vector<bool> seen(h.nodes, false);
    for (auto &v : original) {
      v = NodeId(in.read_bits(width));
      if (v >= h.nodes || seen[v]) {
        malformed("label block is not a permutation");
      }
      seen[v] = true;
    }
    g = relabel(g, original);
  }
  if (!in.at_end()) {
    malformed("trailing bits after the container body");
  }
  return g;
}

std::vector<std::uint8_t> container_bytes(const BitString &container) { return container.to_bytes(); }

BitString container_from_bytes(const std::vector<std::uint8_t> &bytes) {
  const BitString padded = BitString::from_bytes(bytes, bytes.size() * 8);
  BitReader in(padded);
  if (in.remaining() < 48) {
    fail(ErrorCode::Truncated, "container shorter than its header");
  }
  (void)in.read_bits(48);
  const std::uint64_t length = decode_uint(in);
  if (length > in.remaining()) {
    fail(ErrorCode::Truncated, "container length field exceeds the file");
  }
  if (in.remaining() - length >= 8) {
    malformed("container followed by extra bytes");
  }
  return padded.slice(0, in.position() + length);
}

ContainerInfo read_container_info(const BitString &container) {
  BitReader in(container);
  const Header h = read_header(in);
  return ContainerInfo{h.class_name,
                       h.cap,
                       h.nodes,
                       h.components,
                       (h.flags & kFlagByReference) != 0,
                       (h.flags & kFlagKeepLabels) != 0};
}

} // namespace sepcode
