#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "palstego/codecs/codecs.hpp"
#include "palstego/otp.hpp"
#include "test_support.hpp"

using namespace palstego;

#ifndef PALSTEGO_TEST_DATA
#define PALSTEGO_TEST_DATA "tests/data"
#endif

TEST(Keygen, Lengths) {
  EXPECT_EQ(otp::keygen(0).size(), 0U);
  EXPECT_EQ(otp::keygen(1681).size(), 1681U);
  EXPECT_EQ(otp::keygen(7).size(), 7U);
  // 256 random bits colliding would mean a broken entropy source.
  EXPECT_NE(otp::keygen(256), otp::keygen(256));
}

TEST(Keygen, SeededModeIsReproducible) {
  EXPECT_EQ(otp::keygen_seeded_for_testing(1000, 42), otp::keygen_seeded_for_testing(1000, 42));
  EXPECT_NE(otp::keygen_seeded_for_testing(1000, 42), otp::keygen_seeded_for_testing(1000, 43));
}

TEST(Keygen, SeededModeMatchesGoldenFile) {
  // Generated once with `PALSTEGO_SEED=42 palstego keygen 100 seed42_100.key`.
  const auto golden = codecs::read_file(PALSTEGO_TEST_DATA "/seed42_100.key");
  EXPECT_EQ(otp::decode_key_file(golden), otp::keygen_seeded_for_testing(100, 42));
  EXPECT_EQ(otp::encode_key_file(otp::keygen_seeded_for_testing(100, 42)), golden);
}

TEST(ApplyPad, Identities) {
  std::mt19937_64 rng(1);
  const Message m = palstego::testing::random_message(rng, 333);
  EXPECT_EQ(otp::apply_pad(m, otp::PadKey{std::vector<bool>(333, false)}), m);
  EXPECT_EQ(otp::apply_pad(m, otp::PadKey{m.bits}), Message{std::vector<bool>(333, false)});
  EXPECT_THROW(otp::apply_pad(m, otp::PadKey{std::vector<bool>(332, false)}), LengthMismatchError);
  EXPECT_EQ(otp::apply_pad(Message{}, otp::PadKey{}), Message{});
}

TEST(ApplyPad, Involution) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t len = rng() % 300;
    const Message m = palstego::testing::random_message(rng, len);
    const otp::PadKey k{palstego::testing::random_message(rng, len).bits};
    ASSERT_EQ(otp::apply_pad(otp::apply_pad(m, k), k), m);
  }
}

TEST(ApplyPad, OutputBitsLookUniform) {
  // Fixed all-ones message, 400 fresh keys of 256 bits: chi-square on the
  // count of ones (1 degree of freedom, 99.9% critical value 10.83).
  const Message m{std::vector<bool>(256, true)};
  std::size_t ones = 0;
  const std::size_t trials = 400;
  for (std::size_t i = 0; i < trials; ++i) {
    for (bool b : otp::apply_pad(m, otp::keygen(256)).bits) ones += b;
  }
  const double total = 256.0 * trials;
  const double expected = total / 2;
  const double chi2 = 2 * std::pow(static_cast<double>(ones) - expected, 2) / expected;
  EXPECT_LT(chi2, 10.83) << "ones=" << ones << " of " << total;
}

TEST(KeyFile, LayoutAndErrors) {
  const otp::PadKey key{Message::from_string("1010000011").bits};
  const auto bytes = otp::encode_key_file(key);
  const std::vector<std::uint8_t> expected = {'O', 'T', 'P', 'K', 'E', 'Y', 0, 1,
                                              0,   0,   0,   0,   0,   0,   0, 10,
                                              0xA0, 0xC0};
  EXPECT_EQ(bytes, expected);
  EXPECT_EQ(otp::decode_key_file(bytes), key);

  const auto empty = otp::encode_key_file(otp::PadKey{});
  EXPECT_EQ(empty.size(), 16U);
  EXPECT_EQ(otp::decode_key_file(empty).size(), 0U);

  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(otp::decode_key_file(bad), KeyFileError);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(otp::decode_key_file(truncated), KeyFileError);
}
