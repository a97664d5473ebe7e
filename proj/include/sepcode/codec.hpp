#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepcode/bits.hpp"
#include "sepcode/constants.hpp"
#include "sepcode/embgraph.hpp"
#include "sepcode/separation.hpp"
#include "sepcode/table.hpp"

namespace sepcode {

inline constexpr std::uint8_t kContainerVersion = 1;

struct CodecConfig {
  /// Upper bound on the table cap.
  std::size_t max_cap = kDefaultMaxCap;
  /// Fixed table cap; 0 picks the largest cap whose table fits in max(n, kTableBudgetFloor) bits.
  std::size_t cap = 0;
  /// Leave the table out of the container; the decoder rebuilds it.
  bool table_by_reference = false;
  /// Store the input labels. Without them decode returns relabel(g, Encoded::labeling).
  bool keep_labels = true;
  /// Literal levels before the final cap level.
  std::size_t literal_levels = 2;
};

inline constexpr std::size_t kTableBudgetFloor = 4096;

struct LevelStats {
  std::size_t pool = 0;
  std::size_t parts = 0;
  std::size_t boundary = 0; // sum of nbr(V_i)
};

struct CodecStats {
  std::size_t nodes = 0;
  std::size_t cap = 0;
  std::size_t total_bits = 0;
  std::size_t header_bits = 0;
  std::size_t table_bits = 0;
  std::size_t part_code_bits = 0; // table indices only
  std::size_t size_bits = 0;      // part sizes written before each index
  std::size_t fix_bits = 0;
  std::size_t rec_bits = 0;
  std::size_t label_bits = 0;
  /// Everything else: segmentation prefixes and per-component headers.
  std::size_t prefix_bits = 0;
  /// Node counts of the finest part graphs, in encoding order.
  std::vector<std::size_t> leaf_sizes;
  /// Per level (1..K) of the largest component.
  std::vector<LevelStats> levels;
  double seconds_separate = 0;
  double seconds_leaves = 0;
  double seconds_rec = 0;

  [[nodiscard]] double bits_per_node() const { return nodes ? double(total_bits) / double(nodes) : 0.0; }
};

struct Encoded {
  BitString bits;
  /// labeling[v] is the id node v receives on decode (identity when labels are kept).
  std::vector<NodeId> labeling;
  CodecStats stats;
};

/// S_0, ..., S_K for a connected g. K = 0 when g has at most `cap` nodes;
/// otherwise `literal_levels` literal refinements followed by one level whose
/// part graphs have at most `cap` nodes.
[[nodiscard]] std::vector<Separation> build_levels(const EmbeddedGraph &g, const GraphClass &cls, std::size_t cap,
                                                   std::size_t literal_levels);

/// Cap chosen for an n-node input when config.cap is 0.
[[nodiscard]] std::size_t choose_cap(const GraphClass &cls, std::size_t n, const CodecConfig &config);

/// Throws EmptyInput, GenusTooLarge (genus above 0), NotInClass.
[[nodiscard]] Encoded encode(const EmbeddedGraph &g, const GraphClass &cls, const CodecConfig &config = {});

struct DecodeOptions {
  /// Largest cap a by-reference container may ask the decoder to build.
  std::size_t max_cap = kDefaultMaxCap;
};

/// Throws Malformed, Truncated, VersionMismatch, ClassUnknown and other
/// structured errors on damaged input.
[[nodiscard]] EmbeddedGraph decode(const BitString &container, const DecodeOptions &options = {});

/// Byte form: the bit length is stored up front so padding is unambiguous.
[[nodiscard]] std::vector<std::uint8_t> container_bytes(const BitString &container);
[[nodiscard]] BitString container_from_bytes(const std::vector<std::uint8_t> &bytes);

struct ContainerInfo {
  std::string class_name;
  std::size_t cap = 0;
  std::size_t nodes = 0;
  std::size_t components = 0;
  bool table_by_reference = false;
  bool keep_labels = false;
};
[[nodiscard]] ContainerInfo read_container_info(const BitString &container);

} // namespace sepcode
