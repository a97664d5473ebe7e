#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepcode/bits.hpp"
#include "sepcode/constants.hpp"
#include "sepcode/embgraph.hpp"

namespace sepcode {

/// A class of embedded graphs the codec can compress.
///
/// Tables hold the connected members only; part graphs handed to a table are
/// always connected. `patched` classes are not hereditary: parts are completed
/// into members before lookup (see patcher.hpp).
struct GraphClass {
  std::string name;
  std::function<bool(const EmbeddedGraph &)> member;
  bool hereditary = true;
  bool patched = false;
  /// Disconnected inputs are rejected by the codec.
  bool connected_only = false;
  /// Enumeration hint: a new node never needs more than this many neighbours
  /// to reach every member (0 = no limit).
  std::uint32_t attach_limit = 0;
};

/// Registered classes: "planar", "plane-connected", "forest5", "triangulation".
[[nodiscard]] const GraphClass &graph_class(std::string_view name);
[[nodiscard]] std::vector<std::string> class_names();

/// Largest cap each class can enumerate within the build budget.
[[nodiscard]] std::size_t enumeration_limit(const GraphClass &cls);

/// All connected members with at most `cap` nodes, indexed per node count.
/// Members of size m are stored as canonical codes sorted lexicographically;
/// a member's index in that list is its table code.
class ClassTable {
public:
  ClassTable() = default;
  ClassTable(std::string class_name, std::size_t cap);

  [[nodiscard]] const std::string &class_name() const noexcept { return class_name_; }
  [[nodiscard]] std::size_t cap() const noexcept { return cap_; }
  /// num(m); zero for m = 0 and m > cap.
  [[nodiscard]] std::uint64_t count(std::size_t m) const noexcept;
  /// ceil(log2 num(m)), zero when num(m) <= 1.
  [[nodiscard]] unsigned width(std::size_t m) const noexcept;

  [[nodiscard]] std::span<const std::uint8_t> code_at(std::size_t m, std::uint64_t index) const;
  [[nodiscard]] std::optional<std::uint64_t> index_of(std::size_t m, std::span<const std::uint32_t> code) const;

  /// Appends a member of size m. Codes must arrive in ascending order per size.
  void append(std::size_t m, std::span<const std::uint32_t> code);

  friend bool operator==(const ClassTable &a, const ClassTable &b);

private:
  struct Bucket {
    std::vector<std::uint8_t> symbols;
    std::vector<std::uint32_t> offsets{0};
  };
  std::string class_name_;
  std::size_t cap_ = 0;
  std::vector<Bucket> by_size_; // index m - 1
};

/// Enumerates the class up to `cap` nodes. Throws CapTooLarge if cap exceeds
/// max_cap or the class's enumeration limit.
[[nodiscard]] ClassTable build_table(const GraphClass &cls, std::size_t cap, std::size_t max_cap = kDefaultMaxCap);

/// Memoized build_table. Tables are also kept as files in $SEPCODE_CACHE_DIR when set.
[[nodiscard]] const ClassTable &cached_table(const GraphClass &cls, std::size_t cap,
                                             std::size_t max_cap = kDefaultMaxCap);

struct Optcode {
  BitString bits;
  /// labeling[v] is the canonical label of node v.
  std::vector<NodeId> labeling;
};

/// Throws NotInClass when h is not a connected member, TooLarge above the cap.
[[nodiscard]] Optcode optcode(const ClassTable &table, const GraphClass &cls, const EmbeddedGraph &h);
/// Index-only variant for callers that already hold the canonical form.
[[nodiscard]] BitString optcode_of_form(const ClassTable &table, const CanonicalForm &form, std::size_t m);

/// The stored member in canonical labels. Throws IndexOutOfRange for indices past num(m).
[[nodiscard]] EmbeddedGraph decode_optcode(const ClassTable &table, std::size_t m, const BitString &code);
[[nodiscard]] EmbeddedGraph decode_optcode(const ClassTable &table, std::size_t m, BitReader &in);

/// Blob layout is documented in docs/formats.md.
[[nodiscard]] BitString serialize_table(const ClassTable &table);
[[nodiscard]] ClassTable deserialize_table(const BitString &blob);
[[nodiscard]] ClassTable read_table(BitReader &in);

} // namespace sepcode
