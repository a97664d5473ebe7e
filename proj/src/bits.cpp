#include "sepcode/bits.hpp"

#include <algorithm>
#include <bit>

namespace sepcode {

BitString BitString::from_string(std::string_view text) {
  BitString out;
  for (char c : text) {
    if (c != '0' && c != '1') {
      fail(ErrorCode::Malformed, "bit string may contain only '0' and '1'");
    }
    out.push_back(c == '1');
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    fail(ErrorCode::Truncated, "bit count exceeds byte buffer");
  }
  BitString out;
  out.words_.assign((bit_count + 63) / 64, 0);
  out.size_ = bit_count;
  for (std::size_t i = 0; i < (bit_count + 7) / 8; ++i) {
    out.words_[i / 8] |= std::uint64_t(bytes[i]) << (56 - 8 * (i % 8));
  }
  // Clear padding beyond bit_count so equality stays word-wise.
  if (bit_count % 64 != 0) {
    out.words_.back() &= ~std::uint64_t(0) << (64 - bit_count % 64);
  }
  return out;
}

void BitString::push_back(bool bit) {
  if ((size_ & 63) == 0) {
    words_.push_back(0);
  }
  if (bit) {
    words_[size_ >> 6] |= std::uint64_t(1) << (63 - (size_ & 63));
  }
  ++size_;
}

void BitString::append_bits(std::uint64_t value, unsigned width) {
  if (width == 0) {
    return;
  }
  if (width < 64) {
    value &= (std::uint64_t(1) << width) - 1;
  }
  const unsigned offset = size_ & 63;
  if (offset == 0) {
    words_.push_back(value << (64 - width));
  } else {
    const unsigned room = 64 - offset;
    if (width <= room) {
      words_.back() |= value << (room - width);
    } else {
      words_.back() |= value >> (width - room);
      words_.push_back(value << (64 - (width - room)));
    }
  }
  size_ += width;
}

void BitString::append(const BitString &other) {
  std::size_t pos = 0;
  while (pos + 64 <= other.size_) {
    append_bits(other.get_bits(pos, 64), 64);
    pos += 64;
  }
  if (pos < other.size_) {
    const auto rest = static_cast<unsigned>(other.size_ - pos);
    append_bits(other.get_bits(pos, rest), rest);
  }
}

std::uint64_t BitString::get_bits(std::size_t pos, unsigned width) const {
  if (width == 0) {
    return 0;
  }
  const std::size_t word = pos >> 6;
  const unsigned offset = pos & 63;
  std::uint64_t hi = words_[word] << offset;
  if (offset + width > 64) {
    hi |= words_[word + 1] >> (64 - offset);
  }
  return hi >> (64 - width);
}

BitString BitString::slice(std::size_t pos, std::size_t length) const {
  BitString out;
  std::size_t done = 0;
  while (done + 64 <= length) {
    out.append_bits(get_bits(pos + done, 64), 64);
    done += 64;
  }
  if (done < length) {
    const auto rest = static_cast<unsigned>(length - done);
    out.append_bits(get_bits(pos + done, rest), rest);
  }
  return out;
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    out.push_back((*this)[i] ? '1' : '0');
  }
  return out;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (56 - 8 * (i % 8)));
  }
  return out;
}

bool operator==(const BitString &a, const BitString &b) {
  return a.size_ == b.size_ && a.words_ == b.words_;
}

void BitReader::require(std::size_t n) const {
  if (n > remaining()) {
    fail(ErrorCode::Truncated, "bits exhausted");
  }
}

bool BitReader::read_bit() {
  require(1);
  return (*bits_)[pos_++];
}

std::uint64_t BitReader::read_bits(unsigned width) {
  require(width);
  const std::uint64_t v = bits_->get_bits(pos_, width);
  pos_ += width;
  return v;
}

BitString BitReader::read_string(std::size_t length) {
  require(length);
  BitString out = bits_->slice(pos_, length);
  pos_ += length;
  return out;
}

unsigned bit_width_of(std::uint64_t v) noexcept { return static_cast<unsigned>(std::bit_width(v)); }

unsigned index_width(std::uint64_t count) noexcept {
  return count <= 1 ? 0U : static_cast<unsigned>(std::bit_width(count - 1));
}

void encode_uint(BitString &out, std::uint64_t value) {
  // value + 1 overflows only for UINT64_MAX; the codec never writes it.
  const std::uint64_t shifted = value + 1;
  const unsigned len = bit_width_of(shifted);
  out.append_bits(0, len - 1);
  out.append_bits(shifted, len);
}

BitString encode_uint(std::uint64_t value) {
  BitString out;
  encode_uint(out, value);
  return out;
}

std::uint64_t decode_uint(BitReader &in) {
  unsigned zeros = 0;
  while (!in.read_bit()) {
    if (++zeros > 63) {
      fail(ErrorCode::Malformed, "integer code longer than 64 bits");
    }
  }
  const std::uint64_t rest = in.read_bits(zeros);
  return ((std::uint64_t(1) << zeros) | rest) - 1;
}

std::size_t uint_code_length(std::uint64_t value) noexcept { return 2 * bit_width_of(value + 1) - 1; }

DecodedUint decode_uint(const BitString &bits, std::size_t pos) {
  BitReader in(bits, pos);
  const std::uint64_t v = decode_uint(in);
  return {v, in.position() - pos};
}

BitString SegmentedStream::serialize() const {
  BitString out = prefix;
  out.append(payload);
  return out;
}

namespace {

unsigned ceil_log2(std::size_t x) noexcept { return x <= 1 ? 0U : static_cast<unsigned>(std::bit_width(x - 1)); }

} // namespace

std::size_t segmentation_prefix_bound(std::size_t total_bits, std::size_t parts) noexcept {
  const std::size_t m = total_bits;
  const std::size_t d = parts;
  const std::size_t body = std::min(m + d, d * ceil_log2(m + 2));
  return kPrefixC1 * body + kPrefixC2 * ceil_log2(m + d + 2) + kPrefixC3;
}

SegmentedStream concat_segmented(std::span<const BitString> parts) {
  SegmentedStream out;
  out.part_count = parts.size();
  std::size_t m = 0;
  for (const auto &p : parts) {
    m += p.size();
  }
  const std::size_t d = parts.size();
  const unsigned width = bit_width_of(m);
  const std::size_t bitmap_cost = d == 0 ? 0 : (m - parts.back().size()) + (d - 1);
  const std::size_t offset_cost = d == 0 ? 0 : (d - 1) * width;
  // An offset list needs m > 0; otherwise d would not be bounded by the prefix length.
  const bool offsets = m > 0 && offset_cost < bitmap_cost;

  out.prefix.push_back(offsets);
  encode_uint(out.prefix, d);
  encode_uint(out.prefix, m);
  if (d > 1) {
    if (offsets) {
      std::size_t end = 0;
      for (std::size_t i = 0; i + 1 < d; ++i) {
        end += parts[i].size();
        out.prefix.append_bits(end, width);
      }
    } else {
      for (std::size_t i = 0; i + 1 < d; ++i) {
        for (std::size_t b = 0; b < parts[i].size(); ++b) {
          out.prefix.push_back(false);
        }
        out.prefix.push_back(true);
      }
    }
  }
  for (const auto &p : parts) {
    out.payload.append(p);
  }
  return out;
}

namespace {

// Returns the part lengths described by a prefix; leaves `in` just past the prefix.
// `detached` counts payload bits held outside `in`.
std::vector<std::size_t> read_prefix(BitReader &in, std::size_t detached) {
  const bool offsets = in.read_bit();
  const std::uint64_t d = decode_uint(in);
  const std::uint64_t m = decode_uint(in);
  if (d == 0) {
    if (m != 0) {
      fail(ErrorCode::MalformedPrefix, "payload present for zero parts");
    }
    return {};
  }
  if (offsets && m == 0) {
    fail(ErrorCode::MalformedPrefix, "offset prefix with empty payload");
  }
  if (m > in.remaining() + detached) {
    fail(ErrorCode::MalformedPrefix, "payload length exceeds available bits");
  }
  const unsigned width = bit_width_of(m);
  const std::size_t per_part = offsets ? width : 1;
  if ((d - 1) > in.remaining() / per_part) {
    fail(ErrorCode::MalformedPrefix, "part count exceeds available bits");
  }
  std::vector<std::size_t> lengths;
  lengths.reserve(d);
  std::size_t used = 0;
  for (std::uint64_t i = 0; i + 1 < d; ++i) {
    std::size_t len = 0;
    if (offsets) {
      const std::uint64_t end = in.read_bits(width);
      if (end < used || end > m) {
        fail(ErrorCode::MalformedPrefix, "offsets not monotone within payload");
      }
      len = end - used;
    } else {
      while (!in.read_bit()) {
        ++len;
        if (used + len > m) {
          fail(ErrorCode::MalformedPrefix, "unary lengths exceed payload");
        }
      }
    }
    used += len;
    lengths.push_back(len);
  }
  if (used > m) {
    fail(ErrorCode::MalformedPrefix, "lengths exceed payload");
  }
  lengths.push_back(m - used);
  return lengths;
}

} // namespace

std::vector<BitString> split_segmented(const SegmentedStream &stream) {
  BitReader in(stream.prefix);
  const auto lengths = read_prefix(in, stream.payload.size());
  if (!in.at_end()) {
    fail(ErrorCode::MalformedPrefix, "trailing bits after prefix");
  }
  if (lengths.size() != stream.part_count) {
    fail(ErrorCode::MalformedPrefix, "part count disagrees with prefix");
  }
  std::size_t total = 0;
  for (auto len : lengths) {
    total += len;
  }
  if (total != stream.payload.size()) {
    fail(ErrorCode::MalformedPrefix, "prefix inconsistent with payload length");
  }
  std::vector<BitString> parts;
  parts.reserve(lengths.size());
  std::size_t pos = 0;
  for (auto len : lengths) {
    parts.push_back(stream.payload.slice(pos, len));
    pos += len;
  }
  return parts;
}

std::vector<BitString> read_segmented(BitReader &in) {
  const auto lengths = read_prefix(in, 0);
  std::vector<BitString> parts;
  parts.reserve(lengths.size());
  for (auto len : lengths) {
    parts.push_back(in.read_string(len));
  }
  return parts;
}

std::vector<BitString> split_serialized(const BitString &bits) {
  BitReader in(bits);
  auto parts = read_segmented(in);
  if (!in.at_end()) {
    fail(ErrorCode::MalformedPrefix, "trailing bits after segmented stream");
  }
  return parts;
}

BitString join_serialized(std::span<const BitString> parts) { return concat_segmented(parts).serialize(); }

} // namespace sepcode
