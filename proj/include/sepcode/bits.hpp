#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepcode/errors.hpp"

namespace sepcode {

/// Ordered sequence of bits. Bit i lives in word i / 64 at position 63 - i % 64,
/// so byte serialization is most-significant-bit first.
class BitString {
public:
  BitString() = default;

  static BitString from_string(std::string_view text);
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }

  [[nodiscard]] bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (63 - (i & 63))) & 1U;
  }

  void push_back(bool bit);
  /// Appends the low `width` bits of `value`, most significant first.
  void append_bits(std::uint64_t value, unsigned width);
  void append(const BitString &other);

  /// Reads `width` <= 64 bits starting at `pos`.
  [[nodiscard]] std::uint64_t get_bits(std::size_t pos, unsigned width) const;
  [[nodiscard]] BitString slice(std::size_t pos, std::size_t length) const;

  [[nodiscard]] std::string to_string() const;
  /// Zero-padded to a whole number of bytes.
  [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;

  friend bool operator==(const BitString &a, const BitString &b);

private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Sequential cursor over a BitString. Reading past the end throws Truncated.
class BitReader {
public:
  explicit BitReader(const BitString &bits, std::size_t pos = 0) : bits_(&bits), pos_(pos) {}

  [[nodiscard]] bool read_bit();
  [[nodiscard]] std::uint64_t read_bits(unsigned width);
  [[nodiscard]] BitString read_string(std::size_t length);

  [[nodiscard]] std::size_t position() const noexcept { return pos_; }
  [[nodiscard]] std::size_t remaining() const noexcept { return bits_->size() - pos_; }
  [[nodiscard]] bool at_end() const noexcept { return pos_ == bits_->size(); }

private:
  void require(std::size_t n) const;

  const BitString *bits_;
  std::size_t pos_;
};

/// Number of bits needed to write `v` in binary; bit_width(0) == 0.
[[nodiscard]] unsigned bit_width_of(std::uint64_t v) noexcept;

/// ceil(log2(count)) for count >= 1; the width of a fixed-length index into `count` items.
[[nodiscard]] unsigned index_width(std::uint64_t count) noexcept;

// Elias-gamma code of v + 1: floor(log2(v+1)) zeros followed by v + 1 in binary.
void encode_uint(BitString &out, std::uint64_t value);
[[nodiscard]] BitString encode_uint(std::uint64_t value);
[[nodiscard]] std::uint64_t decode_uint(BitReader &in);
/// Length in bits of encode_uint(value).
[[nodiscard]] std::size_t uint_code_length(std::uint64_t value) noexcept;

struct DecodedUint {
  std::uint64_t value;
  std::size_t consumed;
};
[[nodiscard]] DecodedUint decode_uint(const BitString &bits, std::size_t pos = 0);

/// Segmentation prefix plus payload for X_1 o ... o X_d.
///
/// Prefix layout: mode bit, gamma(d), gamma(m), then the boundary body.
/// Mode 0 (bitmap) writes the first d-1 lengths in unary; mode 1 (offsets)
/// writes the first d-1 cumulative ends in bit_width(m) bits each. The cheaper
/// body is chosen, ties going to the bitmap, so that
///   |prefix| <= kPrefixC1 * min{m + d, d * ceil(log2(m + 2))}
///               + kPrefixC2 * ceil(log2(m + d + 2)) + kPrefixC3.
struct SegmentedStream {
  BitString prefix;
  BitString payload;
  std::size_t part_count = 0;

  [[nodiscard]] std::size_t size() const noexcept { return prefix.size() + payload.size(); }
  /// prefix followed by payload.
  [[nodiscard]] BitString serialize() const;
};

inline constexpr std::size_t kPrefixC1 = 1;
inline constexpr std::size_t kPrefixC2 = 4;
inline constexpr std::size_t kPrefixC3 = 3;

[[nodiscard]] std::size_t segmentation_prefix_bound(std::size_t total_bits, std::size_t parts) noexcept;

[[nodiscard]] SegmentedStream concat_segmented(std::span<const BitString> parts);
[[nodiscard]] std::vector<BitString> split_segmented(const SegmentedStream &stream);

/// Reads one serialized segmented stream from `in` and returns its parts.
[[nodiscard]] std::vector<BitString> read_segmented(BitReader &in);
/// Splits a string that holds exactly one serialized segmented stream.
[[nodiscard]] std::vector<BitString> split_serialized(const BitString &bits);
[[nodiscard]] BitString join_serialized(std::span<const BitString> parts);

} // namespace sepcode
