#include <gtest/gtest.h>

#include <random>

#include "palstego/stego.hpp"
#include "test_support.hpp"

using namespace palstego;
using Values = std::vector<Permutation::Value>;

namespace {

const StegoConfig kAllConfigs[] = {
    {IdentityMode::FirstOccurrence, Framing::Raw, false},
    {IdentityMode::FirstOccurrence, Framing::LengthPrefixed, false},
    {IdentityMode::NaturalSort, Framing::Raw, false},
    {IdentityMode::NaturalSort, Framing::LengthPrefixed, false},
};

IndexedImage three_color_cover() {
  return IndexedImage{3, 2, {0, 1, 2, 2, 1, 0}, {{50, 0, 0}, {10, 0, 0}, {30, 0, 0}}};
}

}  // namespace

TEST(Capacity, Examples) {
  EXPECT_EQ(capacity(1), 0U);
  EXPECT_EQ(capacity(2), 1U);
  EXPECT_EQ(capacity(4), 4U);
  EXPECT_EQ(capacity(256), 1683U);
  EXPECT_THROW(capacity(0), PaletteSizeError);
  EXPECT_THROW(capacity(257), PaletteSizeError);
}

TEST(Capacity, MatchesExactOracleForAllN) {
  std::size_t previous = 0;
  for (unsigned n = 1; n <= 256; ++n) {
    const std::size_t cap = capacity(n);
    ASSERT_EQ(cap, palstego::testing::capacity_oracle(n)) << "n = " << n;
    ASSERT_GE(cap, previous);
    previous = cap;
  }
}

TEST(Capacity, ReadableWidth) {
  EXPECT_EQ(readable_bits(1), 0U);
  EXPECT_EQ(readable_bits(2), 1U);
  EXPECT_EQ(readable_bits(4), 5U);
  EXPECT_EQ(readable_bits(256), 1684U);
}

TEST(Embed, EmptyRawMessageKeepsIdentityOrder) {
  const IndexedImage cover = three_color_cover();
  EXPECT_EQ(embed(cover, Message{}, {}), cover);
  const StegoConfig natural{IdentityMode::NaturalSort, Framing::Raw, false};
  EXPECT_EQ(embed(cover, Message{}, natural), sort_by_natural_key(cover));
}

TEST(Embed, TwoBitsIntoThreeColors) {
  // "10" -> m = 2 -> third permutation of 012 in lexicographic order: 102.
  const IndexedImage cover = three_color_cover();
  const IndexedImage stego = embed(cover, Message::from_string("10"), {});
  EXPECT_EQ(unrank(Natural(2), 3), Permutation(Values{1, 0, 2}));
  EXPECT_EQ(stego, apply_permutation(cover, Permutation(Values{1, 0, 2})));
  EXPECT_EQ(extract(stego, {}, 2).to_string(), "10");
}

TEST(Embed, CapacityExceeded) {
  const IndexedImage cover = three_color_cover();  // capacity(3) = 2
  EXPECT_THROW(embed(cover, Message::from_string("101"), {}), CapacityExceededError);
  const StegoConfig framed{IdentityMode::FirstOccurrence, Framing::LengthPrefixed, false};
  EXPECT_THROW(embed(cover, Message{}, framed), CapacityExceededError);
  const IndexedImage mono{2, 1, {0, 0}, {{1, 2, 3}}};
  EXPECT_NO_THROW(embed(mono, Message{}, {}));
  EXPECT_THROW(embed(mono, Message::from_string("1"), {}), CapacityExceededError);
}

TEST(Embed, StrictModeRejectsDuplicateColors) {
  const IndexedImage cover{3, 1, {0, 1, 2}, {{1, 1, 1}, {2, 2, 2}, {1, 1, 1}}};
  StegoConfig strict;
  strict.strict = true;
  EXPECT_THROW(embed(cover, Message::from_string("1"), strict), DuplicateColorError);
  const IndexedImage merged = embed(cover, Message::from_string("1"), {});
  EXPECT_EQ(merged.palette.size(), 2U);
  EXPECT_EQ(render(merged), render(cover));
}

TEST(Embed, AllOnesAtCapacityRoundTrips) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2U, 3U, 17U, 100U, 256U}) {
    const IndexedImage cover = palstego::testing::random_canonical_image(rng, n, 24, 24);
    Message ones;
    ones.bits.assign(capacity(n), true);
    const IndexedImage stego = embed(cover, ones, {});
    if (n > 2) { EXPECT_FALSE(recover_permutation(stego, IdentityMode::FirstOccurrence).is_identity()); }
    EXPECT_EQ(extract(stego, {}, ones.size()), ones);
  }
}

TEST(Extract, IdentityOrderIsAllZeros) {
  std::mt19937_64 rng(12);
  const IndexedImage cover = palstego::testing::random_canonical_image(rng, 4, 4, 4);
  EXPECT_EQ(extract(cover, {}, 5).to_string(), "00000");
}

TEST(Extract, FullReversalGivesNFactorialMinusOne) {
  std::mt19937_64 rng(13);
  const IndexedImage cover = palstego::testing::random_canonical_image(rng, 256, 32, 32);
  const IndexedImage reversed = negative(cover);
  const Natural expected = factorial(256) - Natural(1);
  const Message bits = extract(reversed, {}, readable_bits(256));
  EXPECT_EQ(bits.size(), 1684U);
  EXPECT_EQ(Natural::from_bits(bits.bits), expected);
  // 256! - 1 needs 1684 bits, one more than the guaranteed capacity.
  EXPECT_THROW(extract(reversed, {}, capacity(256)), LengthError);
}

TEST(Extract, LengthErrors) {
  const IndexedImage cover = three_color_cover();
  EXPECT_THROW(extract(cover, {}, std::nullopt), LengthError);
  EXPECT_THROW(extract(cover, {}, readable_bits(3) + 1), LengthError);
}

TEST(Extract, FramingErrorOnOversizedPrefix) {
  std::mt19937_64 rng(14);
  const IndexedImage cover = palstego::testing::random_canonical_image(rng, 20, 8, 8);
  ASSERT_EQ(capacity(20), 61U);
  const Natural m = Natural(0xFFFF) << 45;  // prefix 65535, still below 20!
  ASSERT_LT(m, factorial(20));
  const IndexedImage stego = apply_permutation(cover, unrank(m, 20));
  const StegoConfig framed{IdentityMode::FirstOccurrence, Framing::LengthPrefixed, false};
  EXPECT_THROW(extract(stego, framed), FramingError);

  const IndexedImage tiny = three_color_cover();
  EXPECT_THROW(extract(tiny, framed), FramingError);

  const IndexedImage good = embed(cover, Message::from_string("1011"), framed);
  EXPECT_EQ(extract(good, framed).to_string(), "1011");
  EXPECT_EQ(extract(good, framed, 4).to_string(), "1011");
  EXPECT_THROW(extract(good, framed, 5), FramingError);
}

TEST(Extract, PaletteMismatchOnDuplicateUsedColors) {
  const IndexedImage altered{3, 1, {0, 1, 2}, {{1, 1, 1}, {2, 2, 2}, {1, 1, 1}}};
  EXPECT_THROW(extract(altered, {}, 1), PaletteMismatchError);
}

TEST(Extract, IgnoresUnusedPaddingEntries) {
  std::mt19937_64 rng(15);
  const IndexedImage cover = palstego::testing::random_canonical_image(rng, 5, 6, 6);
  const Message msg = Message::from_string("110010");
  for (const auto& cfg : kAllConfigs) {
    IndexedImage stego = embed(cover, msg, {cfg.identity, Framing::Raw, false});
    // What a GIF writer does to a 5-color palette: pad to 8 with black.
    stego.palette.resize(8, Rgb{});
    EXPECT_EQ(extract(stego, {cfg.identity, Framing::Raw, false}, msg.size()), msg);
  }
}

TEST(Stego, RoundTripAllConfigsRandomCovers) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 255;
    const IndexedImage cover = palstego::testing::random_canonical_image(rng, n, 17, 16);
    for (const auto& cfg : kAllConfigs) {
      const std::size_t cap = capacity(n);
      const std::size_t usable = cfg.framing == Framing::Raw ? cap : (cap >= 16 ? cap - 16 : 0);
      if (cfg.framing == Framing::LengthPrefixed && cap < 16) continue;
      const Message msg = palstego::testing::random_message(rng, rng() % (usable + 1));
      const IndexedImage stego = embed(cover, msg, cfg);
      ASSERT_EQ(render(stego), render(cover));
      ASSERT_TRUE(std::is_permutation(stego.palette.begin(), stego.palette.end(),
                                      cover.palette.begin(), cover.palette.end()));
      if (cfg.identity == IdentityMode::FirstOccurrence) { ASSERT_EQ(canonicalize(stego), canonicalize(cover)); }
      const auto expected = cfg.framing == Framing::Raw ? std::optional(msg.size()) : std::nullopt;
      ASSERT_EQ(extract(stego, cfg, expected), msg);
    }
  }
}

TEST(Stego, NonCanonicalCoverIsCanonicalizedFirst) {
  std::mt19937_64 rng(17);
  const IndexedImage cover = palstego::testing::random_image(rng, 200, 12, 12);
  const std::size_t n = distinct_used_colors(cover);
  const Message msg = palstego::testing::random_message(rng, capacity(n));
  const IndexedImage stego = embed(cover, msg, {});
  EXPECT_EQ(stego.palette.size(), n);
  EXPECT_EQ(render(stego), render(cover));
  EXPECT_EQ(extract(stego, {}, msg.size()), msg);
}

TEST(Stego, WrongIdentityModeGivesOtherBits) {
  std::mt19937_64 rng(18);
  const IndexedImage cover = palstego::testing::random_canonical_image(rng, 64, 16, 16);
  const Message msg = palstego::testing::random_message(rng, 200);
  const IndexedImage stego = embed(cover, msg, {});
  const Message wrong = extract(stego, {IdentityMode::NaturalSort, Framing::Raw, false}, readable_bits(64));
  EXPECT_EQ(wrong.size(), readable_bits(64));
  EXPECT_NE(Natural::from_bits(wrong.bits), Natural::from_bits(msg.bits));
}

TEST(Message, ByteAndTextForms) {
  const std::vector<std::uint8_t> bytes = {0xA5, 0x0F};
  const Message m = Message::from_bytes(bytes, 12);
  EXPECT_EQ(m.to_string(), "101001010000");
  EXPECT_EQ(m.to_bytes(), (std::vector<std::uint8_t>{0xA5, 0x00}));
  EXPECT_EQ(Message::from_bytes(bytes).to_bytes(), bytes);
  EXPECT_THROW(Message::from_bytes(bytes, 17), LengthError);
  EXPECT_THROW(Message::from_string("10x"), Error);
}

TEST(BinaryImage, PackUnpack) {
  const BinaryImage one{1, 1, {true}};
  EXPECT_EQ(Natural::from_bits(pack_binary_image(one).bits), Natural(1));
  const BinaryImage ones{2, 2, {true, true, true, true}};
  EXPECT_EQ(pack_binary_image(ones).to_string(), "1111");
  EXPECT_EQ(Natural::from_bits(pack_binary_image(ones).bits), Natural(15));
  EXPECT_EQ(unpack_binary_image(Message::from_string("1111"), 2, 2), ones);
  EXPECT_THROW(unpack_binary_image(Message::from_string("111"), 2, 2), DimensionMismatchError);
  EXPECT_THROW(pack_binary_image(BinaryImage{2, 2, {true}}), DimensionMismatchError);

  std::mt19937_64 rng(19);
  for (int i = 0; i < 20; ++i) {
    BinaryImage img{16, 16, palstego::testing::random_message(rng, 256).bits};
    EXPECT_EQ(unpack_binary_image(pack_binary_image(img), 16, 16), img);
  }
}

TEST(BinaryImage, FortyOneSquareFitsAndHasAtMost507Digits) {
  BinaryImage black{41, 41, std::vector<bool>(41 * 41, true)};
  const Message m = pack_binary_image(black);
  EXPECT_EQ(m.size(), 1681U);
  EXPECT_LE(m.size(), capacity(256));
  EXPECT_EQ(Natural::from_bits(m.bits).to_decimal().size(), 507U);
}
