#include "sepcode/table.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_set>

namespace sepcode {

namespace {

constexpr std::uint32_t kTableMagic = 0x53435442; // "SCTB"
constexpr std::uint32_t kTableVersion = 1;

using Rotations = std::vector<std::vector<NodeId>>;

bool acyclic(const EmbeddedGraph &g) {
  std::vector<std::uint32_t> comp;
  return g.edge_count() + connected_components(g, comp) == g.node_count();
}

std::vector<GraphClass> make_registry() {
  std::vector<GraphClass> out;
  out.push_back({"planar", [](const EmbeddedGraph &g) { return genus(g) == 0; }, true, false, false});
  out.push_back({"plane-connected", [](const EmbeddedGraph &g) { return is_connected(g) && genus(g) == 0; }, true,
                 false, true});
  out.push_back({"forest5", [](const EmbeddedGraph &g) { return g.max_degree() <= 5 && acyclic(g); }, true, false,
                 false, 1});
  out.push_back({"triangulation",
                 [](const EmbeddedGraph &g) {
                   return g.node_count() >= 3 && is_connected(g) && genus(g) == 0 && is_triangulation(g);
                 },
                 false, true, true});
  return out;
}

const std::vector<GraphClass> &registry() {
  static const std::vector<GraphClass> classes = make_registry();
  return classes;
}

std::string code_key(std::span<const std::uint32_t> code) {
  std::string key(code.size(), '\0');
  for (std::size_t i = 0; i < code.size(); ++i) {
    key[i] = static_cast<char>(code[i]);
  }
  return key;
}

std::vector<std::uint32_t> widen(std::span<const std::uint8_t> symbols) {
  return {symbols.begin(), symbols.end()};
}

// Collects the distinct canonical codes of one size.
class Level {
public:
  void offer(const EmbeddedGraph &g, const GraphClass &cls) {
    if (cls.attach_limit != 0 && g.node_count() > 1 && g.degree(NodeId(g.node_count() - 1)) > cls.attach_limit) {
      return;
    }
    const CanonicalForm form = canonical_form(g);
    std::string key = code_key(form.code);
    if (!seen_.contains(key) && cls.member(g)) {
      seen_.insert(std::move(key));
    }
  }

  [[nodiscard]] std::vector<std::string> sorted() const {
    std::vector<std::string> out(seen_.begin(), seen_.end());
    std::sort(out.begin(), out.end(), [](const std::string &a, const std::string &b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                          [](char x, char y) { return std::uint8_t(x) < std::uint8_t(y); });
    });
    return out;
  }

private:
  std::unordered_set<std::string> seen_;
};

EmbeddedGraph graph_of_key(const std::string &key) {
  std::vector<std::uint32_t> code(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) {
    code[i] = std::uint8_t(key[i]);
  }
  return graph_from_code(code);
}

// Every connected plane graph on m + 1 nodes arises from one on m nodes by
// placing a node inside a face and joining it to distinct corners of that face.
void grow_generic(const EmbeddedGraph &g, const GraphClass &cls, Level &next) {
  const auto m = static_cast<NodeId>(g.node_count());
  if (m == 1) {
    next.offer(EmbeddedGraph::from_rotations({{1}, {0}}), cls);
    return;
  }
  const Rotations base = g.rotations();
  for (const auto &face : faces(g)) {
    const std::size_t len = face.size();
    // Corner i sits at head(face[i]), after twin(face[i]) in clockwise order.
    std::vector<NodeId> corner(len);
    for (std::size_t i = 0; i < len; ++i) {
      corner[i] = g.head(face[i]);
    }
    std::vector<std::size_t> chosen;
    const std::size_t limit = cls.attach_limit == 0 ? len : std::min<std::size_t>(len, cls.attach_limit);
    // Subsets of corner positions on distinct nodes, in increasing position order.
    auto emit = [&]() {
      Rotations rot = base;
      rot.emplace_back();
      for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
        const NodeId t = corner[*it];
        const NodeId from = g.tail(face[*it]);
        auto &r = rot[t];
        r.insert(std::find(r.begin(), r.end(), from) + 1, m);
        rot[m].push_back(t);
      }
      next.offer(EmbeddedGraph::from_rotations(rot), cls);
    };
    std::vector<bool> used(m, false);
    auto extend = [&](auto &self, std::size_t from) -> void {
      for (std::size_t i = from; i < len; ++i) {
        if (used[corner[i]]) {
          continue;
        }
        used[corner[i]] = true;
        chosen.push_back(i);
        emit();
        if (chosen.size() < limit) {
          self(self, i + 1);
        }
        chosen.pop_back();
        used[corner[i]] = false;
      }
    };
    extend(extend, 0);
  }
}

void insert_after(std::vector<NodeId> &r, NodeId after, NodeId w) {
  r.insert(std::find(r.begin(), r.end(), after) + 1, w);
}

// Replaces edge u-v by the other diagonal of its two triangles. Returns false
// when that diagonal already exists.
bool flip(Rotations &rot, NodeId u, NodeId v) {
  auto &ru = rot[u];
  auto &rv = rot[v];
  const auto iu = std::find(ru.begin(), ru.end(), v) - ru.begin();
  const auto iv = std::find(rv.begin(), rv.end(), u) - rv.begin();
  const NodeId a = rv[(iv + 1) % rv.size()];
  const NodeId b = ru[(iu + 1) % ru.size()];
  if (a == b || std::find(rot[a].begin(), rot[a].end(), b) != rot[a].end()) {
    return false;
  }
  ru.erase(ru.begin() + iu);
  rv.erase(rv.begin() + iv);
  insert_after(rot[a], v, b);
  insert_after(rot[b], u, a);
  return true;
}

// Every triangulation on m + 1 >= 4 nodes has a node of degree 3, 4 or 5 whose
// removal leaves a triangulation after filling its link with a fan. The
// inverse: stack a node into a face, then flip up to two edges onto it.
void grow_triangulation(const EmbeddedGraph &g, const GraphClass &cls, Level &next) {
  const auto x = static_cast<NodeId>(g.node_count());
  const Rotations base = g.rotations();
  for (NodeId u = 0; u < x; ++u) {
    const auto &ru = base[u];
    for (std::size_t i = 0; i < ru.size(); ++i) {
      // Face (u, w0, w1) with w1 clockwise after w0 around u.
      const NodeId w0 = ru[i];
      const NodeId w1 = ru[(i + 1) % ru.size()];
      const NodeId w2 = ru[(i + 2) % ru.size()];
      Rotations rot = base;
      insert_after(rot[u], w0, x);
      insert_after(rot[w1], u, x);
      insert_after(rot[w0], w1, x);
      rot.push_back({u, w0, w1});
      next.offer(EmbeddedGraph::from_rotations(rot), cls);
      if (!flip(rot, u, w1)) {
        continue;
      }
      next.offer(EmbeddedGraph::from_rotations(rot), cls);
      if (w2 != w0 && flip(rot, u, w2)) {
        next.offer(EmbeddedGraph::from_rotations(rot), cls);
      }
    }
  }
}

void write_bits_code(BitString &out, std::span<const std::uint8_t> symbols, unsigned width) {
  for (auto s : symbols) {
    out.append_bits(s, width);
  }
}

} // namespace

const GraphClass &graph_class(std::string_view name) {
  for (const auto &c : registry()) {
    if (c.name == name) {
      return c;
    }
  }
  fail(ErrorCode::ClassUnknown, "unknown graph class '" + std::string(name) + "'");
}

std::vector<std::string> class_names() {
  std::vector<std::string> out;
  for (const auto &c : registry()) {
    out.push_back(c.name);
  }
  return out;
}

std::size_t enumeration_limit(const GraphClass &cls) {
  if (cls.name == "triangulation") {
    return kTriangulationCapLimit;
  }
  if (cls.name == "forest5") {
    return kForestCapLimit;
  }
  return kPlanarCapLimit;
}

ClassTable::ClassTable(std::string class_name, std::size_t cap)
    : class_name_(std::move(class_name)), cap_(cap), by_size_(cap) {}

std::uint64_t ClassTable::count(std::size_t m) const noexcept {
  if (m == 0 || m > cap_) {
    return 0;
  }
  return by_size_[m - 1].offsets.size() - 1;
}

unsigned ClassTable::width(std::size_t m) const noexcept { return index_width(count(m)); }

std::span<const std::uint8_t> ClassTable::code_at(std::size_t m, std::uint64_t index) const {
  if (index >= count(m)) {
    fail(ErrorCode::IndexOutOfRange, "table index " + std::to_string(index) + " out of range at size " +
                                         std::to_string(m));
  }
  const Bucket &b = by_size_[m - 1];
  return {b.symbols.data() + b.offsets[index], b.offsets[index + 1] - b.offsets[index]};
}

std::optional<std::uint64_t> ClassTable::index_of(std::size_t m, std::span<const std::uint32_t> code) const {
  const std::uint64_t num = count(m);
  std::uint64_t lo = 0;
  std::uint64_t hi = num;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    const auto entry = code_at(m, mid);
    if (std::lexicographical_compare(entry.begin(), entry.end(), code.begin(), code.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < num) {
    const auto entry = code_at(m, lo);
    if (std::equal(entry.begin(), entry.end(), code.begin(), code.end())) {
      return lo;
    }
  }
  return std::nullopt;
}

void ClassTable::append(std::size_t m, std::span<const std::uint32_t> code) {
  if (m == 0 || m > cap_) {
    fail(ErrorCode::TooLarge, "member size outside table cap");
  }
  Bucket &b = by_size_[m - 1];
  for (auto s : code) {
    b.symbols.push_back(static_cast<std::uint8_t>(s));
  }
  b.offsets.push_back(static_cast<std::uint32_t>(b.symbols.size()));
}

bool operator==(const ClassTable &a, const ClassTable &b) {
  if (a.class_name_ != b.class_name_ || a.cap_ != b.cap_) {
    return false;
  }
  for (std::size_t i = 0; i < a.cap_; ++i) {
    if (a.by_size_[i].symbols != b.by_size_[i].symbols || a.by_size_[i].offsets != b.by_size_[i].offsets) {
      return false;
    }
  }
  return true;
}

ClassTable build_table(const GraphClass &cls, std::size_t cap, std::size_t max_cap) {
  if (cap > max_cap || cap > enumeration_limit(cls)) {
    fail(ErrorCode::CapTooLarge, "cap " + std::to_string(cap) + " exceeds the enumeration budget for class " +
                                     cls.name);
  }
  ClassTable table(cls.name, cap);
  std::vector<std::string> current;
  for (std::size_t m = 1; m <= cap; ++m) {
    Level level;
    if (cls.patched) {
      if (m == 3) {
        level.offer(EmbeddedGraph::from_rotations({{1, 2}, {2, 0}, {0, 1}}), cls);
      } else if (m > 3) {
        for (const auto &key : current) {
          grow_triangulation(graph_of_key(key), cls, level);
        }
      }
    } else if (m == 1) {
      level.offer(EmbeddedGraph::from_rotations({{}}), cls);
    } else {
      for (const auto &key : current) {
        grow_generic(graph_of_key(key), cls, level);
      }
    }
    current = level.sorted();
    for (const auto &key : current) {
      const std::vector<std::uint32_t> code = widen({reinterpret_cast<const std::uint8_t *>(key.data()), key.size()});
      table.append(m, code);
    }
  }
  return table;
}

const ClassTable &cached_table(const GraphClass &cls, std::size_t cap, std::size_t max_cap) {
  static std::mutex lock;
  static std::map<std::pair<std::string, std::size_t>, std::unique_ptr<ClassTable>> memo;
  const std::scoped_lock guard(lock);
  auto &slot = memo[{cls.name, cap}];
  if (slot) {
    return *slot;
  }
  if (cap > max_cap) {
    fail(ErrorCode::CapTooLarge, "cap " + std::to_string(cap) + " exceeds max cap " + std::to_string(max_cap));
  }
  const char *dir = std::getenv("SEPCODE_CACHE_DIR");
  std::filesystem::path file;
  if (dir != nullptr && *dir != '\0') {
    file = std::filesystem::path(dir) / (cls.name + "-" + std::to_string(cap) + ".sctb");
    std::ifstream in(file, std::ios::binary);
    if (in) {
      std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      try {
        const BitString bits = BitString::from_bytes(bytes, bytes.size() * 8);
        BitReader reader(bits);
        ClassTable t = read_table(reader);
        if (t.class_name() == cls.name && t.cap() == cap) {
          slot = std::make_unique<ClassTable>(std::move(t));
          return *slot;
        }
      } catch (const Error &) {
        // Stale or damaged cache file: rebuild below.
      }
    }
  }
  slot = std::make_unique<ClassTable>(build_table(cls, cap, max_cap));
  if (!file.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    const auto bytes = serialize_table(*slot).to_bytes();
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  return *slot;
}

BitString optcode_of_form(const ClassTable &table, const CanonicalForm &form, std::size_t m) {
  if (m > table.cap()) {
    fail(ErrorCode::TooLarge, "member has " + std::to_string(m) + " nodes, cap is " + std::to_string(table.cap()));
  }
  const auto index = table.index_of(m, form.code);
  if (!index) {
    fail(ErrorCode::NotInClass, "graph is not a member of class " + table.class_name());
  }
  BitString out;
  out.append_bits(*index, table.width(m));
  return out;
}

Optcode optcode(const ClassTable &table, const GraphClass &cls, const EmbeddedGraph &h) {
  const std::size_t m = h.node_count();
  if (m > table.cap()) {
    fail(ErrorCode::TooLarge, "member has " + std::to_string(m) + " nodes, cap is " + std::to_string(table.cap()));
  }
  if (m == 0 || !is_connected(h) || !cls.member(h)) {
    fail(ErrorCode::NotInClass, "graph is not a connected member of class " + cls.name);
  }
  const CanonicalForm form = canonical_form(h);
  Optcode out;
  out.bits = optcode_of_form(table, form, m);
  out.labeling.resize(m);
  for (NodeId k = 0; k < m; ++k) {
    out.labeling[form.order[k]] = k;
  }
  return out;
}

EmbeddedGraph decode_optcode(const ClassTable &table, std::size_t m, BitReader &in) {
  if (m == 0 || m > table.cap()) {
    fail(ErrorCode::IndexOutOfRange, "member size " + std::to_string(m) + " outside table");
  }
  const std::uint64_t index = in.read_bits(table.width(m));
  return graph_from_code(widen(table.code_at(m, index)));
}

EmbeddedGraph decode_optcode(const ClassTable &table, std::size_t m, const BitString &code) {
  BitReader in(code);
  EmbeddedGraph g = decode_optcode(table, m, in);
  if (!in.at_end()) {
    fail(ErrorCode::Malformed, "optcode longer than its width");
  }
  return g;
}

BitString serialize_table(const ClassTable &table) {
  BitString out;
  out.append_bits(kTableMagic, 32);
  out.append_bits(kTableVersion, 8);
  encode_uint(out, table.class_name().size());
  for (char c : table.class_name()) {
    out.append_bits(std::uint8_t(c), 8);
  }
  encode_uint(out, table.cap());
  for (std::size_t m = 1; m <= table.cap(); ++m) {
    encode_uint(out, table.count(m));
  }
  for (std::size_t m = 1; m <= table.cap(); ++m) {
    const unsigned w = index_width(m);
    for (std::uint64_t i = 0; i < table.count(m); ++i) {
      write_bits_code(out, table.code_at(m, i), w);
    }
  }
  return out;
}

ClassTable read_table(BitReader &in) {
  if (in.read_bits(32) != kTableMagic) {
    fail(ErrorCode::Malformed, "bad table magic");
  }
  if (in.read_bits(8) != kTableVersion) {
    fail(ErrorCode::VersionMismatch, "unsupported table version");
  }
  const std::uint64_t name_len = decode_uint(in);
  if (name_len > 64) {
    fail(ErrorCode::Malformed, "class name too long");
  }
  std::string name;
  for (std::uint64_t i = 0; i < name_len; ++i) {
    name.push_back(static_cast<char>(in.read_bits(8)));
  }
  const std::uint64_t cap = decode_uint(in);
  if (cap > kMaxStoredCap) {
    fail(ErrorCode::Malformed, "table cap out of range");
  }
  std::vector<std::uint64_t> counts(cap);
  for (auto &c : counts) {
    c = decode_uint(in);
  }
  ClassTable table(name, cap);
  std::vector<std::uint32_t> code;
  std::vector<std::uint32_t> previous;
  for (std::size_t m = 1; m <= cap; ++m) {
    const unsigned w = index_width(m);
    // Every entry holds at least m symbols; reject counts the input cannot carry.
    if (counts[m - 1] > (m == 1 ? 1 : in.remaining() / (m * w))) {
      fail(ErrorCode::Malformed, "table count exceeds blob length");
    }
    previous.clear();
    for (std::uint64_t i = 0; i < counts[m - 1]; ++i) {
      code.clear();
      for (std::size_t v = 0; v < m; ++v) {
        const auto deg = static_cast<std::uint32_t>(in.read_bits(w));
        if (deg >= m) {
          fail(ErrorCode::Malformed, "degree out of range in table entry");
        }
        code.push_back(deg);
        for (std::uint32_t k = 0; k < deg; ++k) {
          const auto label = static_cast<std::uint32_t>(in.read_bits(w));
          if (label >= m) {
            fail(ErrorCode::Malformed, "label out of range in table entry");
          }
          code.push_back(label);
        }
      }
      if (i > 0 && !std::lexicographical_compare(previous.begin(), previous.end(), code.begin(), code.end())) {
        fail(ErrorCode::Malformed, "table entries not strictly ascending");
      }
      table.append(m, code);
      previous = code;
    }
  }
  return table;
}

ClassTable deserialize_table(const BitString &blob) {
  BitReader in(blob);
  ClassTable t = read_table(in);
  if (!in.at_end()) {
    fail(ErrorCode::Malformed, "trailing bits after table");
  }
  return t;
}

} // namespace sepcode
