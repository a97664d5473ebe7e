#include <gtest/gtest.h>

#include <random>

#include "sepcode/bits.hpp"

using namespace sepcode;

namespace {

BitString random_bits(std::mt19937_64 &rng, std::size_t len) {
  BitString b;
  for (std::size_t i = 0; i < len; ++i) {
    b.push_back(rng() & 1U);
  }
  return b;
}

} // namespace

TEST(BitString, AppendAndSliceAcrossWords) {
  std::mt19937_64 rng(7);
  std::string reference;
  BitString b;
  for (int i = 0; i < 300; ++i) {
    const unsigned w = rng() % 65;
    const std::uint64_t v = rng();
    b.append_bits(v, w);
    for (unsigned k = w; k-- > 0;) {
      reference.push_back(((v >> k) & 1U) ? '1' : '0');
    }
  }
  ASSERT_EQ(b.to_string(), reference);
  for (int i = 0; i < 200; ++i) {
    const std::size_t pos = rng() % reference.size();
    const std::size_t len = rng() % (reference.size() - pos + 1);
    EXPECT_EQ(b.slice(pos, len).to_string(), reference.substr(pos, len));
  }
  EXPECT_EQ(BitString::from_bytes(b.to_bytes(), b.size()), b);
}

TEST(EliasGamma, KnownCodewords) {
  EXPECT_EQ(encode_uint(0).to_string(), "1");
  EXPECT_EQ(encode_uint(1).to_string(), "010");
  EXPECT_EQ(encode_uint(2).to_string(), "011");
  EXPECT_EQ(encode_uint(3).to_string(), "00100");
  EXPECT_EQ(encode_uint(6).to_string(), "00111");
  EXPECT_EQ(encode_uint(7).to_string(), "0001000");
}

TEST(EliasGamma, RoundTripAndLength) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const std::uint64_t v = (rng() >> (rng() % 64)) % (~std::uint64_t(0) - 1);
    const BitString code = encode_uint(v);
    EXPECT_EQ(code.size(), uint_code_length(v));
    // Length is 2*floor(log2(v+1)) + 1.
    EXPECT_EQ(code.size(), 2 * (63 - static_cast<std::size_t>(__builtin_clzll(v + 1))) + 1);
    const auto d = decode_uint(code);
    EXPECT_EQ(d.value, v);
    EXPECT_EQ(d.consumed, code.size());
  }
}

TEST(EliasGamma, TruncatedInputThrows) {
  BitString b = BitString::from_string("0001");
  try {
    (void)decode_uint(b);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::Truncated);
  }
}

TEST(EliasGamma, IndexWidth) {
  EXPECT_EQ(index_width(1), 0U);
  EXPECT_EQ(index_width(2), 1U);
  EXPECT_EQ(index_width(3), 2U);
  EXPECT_EQ(index_width(4), 2U);
  EXPECT_EQ(index_width(5), 3U);
  EXPECT_EQ(index_width(1024), 10U);
  EXPECT_EQ(index_width(1025), 11U);
}

TEST(Segmentation, RoundTripRandomPartitions) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = rng() % 40;
    std::vector<BitString> parts;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t len = (rng() % 4 == 0) ? 0 : rng() % (trial % 3 == 0 ? 200 : 6);
      parts.push_back(random_bits(rng, len));
    }
    const SegmentedStream s = concat_segmented(parts);
    std::size_t m = 0;
    for (auto &p : parts) {
      m += p.size();
    }
    EXPECT_EQ(s.payload.size(), m);
    EXPECT_LE(s.prefix.size(), segmentation_prefix_bound(m, d));
    EXPECT_EQ(split_segmented(s), parts);
    const BitString joined = s.serialize();
    EXPECT_EQ(split_serialized(joined), parts);
  }
}

TEST(Segmentation, PrefixMatchesReferenceLayout) {
  // Three parts "1", "", "01": bitmap body "0" "1" then "1" costs 3 bits,
  // offsets would cost 2 * bit_width(3) = 4, so the bitmap is chosen.
  std::vector<BitString> parts = {BitString::from_string("1"), BitString(), BitString::from_string("01")};
  const SegmentedStream s = concat_segmented(parts);
  EXPECT_EQ(s.prefix.to_string(), "0" + encode_uint(3).to_string() + encode_uint(3).to_string() + "011");
  EXPECT_EQ(s.payload.to_string(), "101");
}

TEST(Segmentation, OffsetModeForLongParts) {
  std::mt19937_64 rng(5);
  std::vector<BitString> parts;
  for (int i = 0; i < 10; ++i) {
    parts.push_back(random_bits(rng, 500));
  }
  const SegmentedStream s = concat_segmented(parts);
  EXPECT_TRUE(s.prefix[0]);
  EXPECT_LE(s.prefix.size(), 9 * 13 + 1 + 2 * 13 + 8);
  EXPECT_EQ(split_segmented(s), parts);
}

TEST(Segmentation, CorruptedStreamsFailCleanly) {
  std::mt19937_64 rng(9);
  int structured = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<BitString> parts;
    const std::size_t d = 1 + rng() % 8;
    for (std::size_t i = 0; i < d; ++i) {
      parts.push_back(random_bits(rng, rng() % 30));
    }
    BitString s = join_serialized(parts);
    std::string text = s.to_string();
    const std::size_t flips = 1 + rng() % 3;
    for (std::size_t f = 0; f < flips; ++f) {
      const std::size_t pos = rng() % text.size();
      text[pos] = text[pos] == '0' ? '1' : '0';
    }
    if (rng() % 4 == 0) {
      text.resize(rng() % text.size());
    }
    try {
      (void)split_serialized(BitString::from_string(text));
    } catch (const Error &) {
      ++structured;
    }
  }
  EXPECT_GT(structured, 0);
}
