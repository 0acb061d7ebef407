#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "palstego/palstego.hpp"
#include "test_support.hpp"

using namespace palstego;
namespace fs = std::filesystem;

#ifndef PALSTEGO_CLI
#error "PALSTEGO_CLI must point at the palstego executable"
#endif
#ifndef PALSTEGO_TEST_DATA
#define PALSTEGO_TEST_DATA "tests/data"
#endif

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + PALSTEGO_CLI + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("palstego_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::mt19937_64 rng(2024);
    card_ = palstego::testing::random_canonical_image(rng, 256, 128, 128);
    codecs::write_image(path("card.png"), card_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write_bytes(const std::string& name, const std::vector<std::uint8_t>& bytes) const {
    codecs::write_file(path(name), bytes);
  }

  fs::path dir_;
  IndexedImage card_;
};

}  // namespace

TEST_F(CliTest, EmbedExtractOnTestCard) {
  write_bytes("msg.bin", {'h', 'e', 'l', 'l', 'o', '!', 0x00, 0xFF});
  for (const std::string identity : {"first-occurrence", "natural-sort"}) {
    for (const std::string ext : {"png", "gif", "palimg"}) {
      const std::string stego = path("stego." + ext);
      const auto e = run("embed " + path("card.png") + " " + stego + " --message " + path("msg.bin") +
                         " --identity " + identity);
      ASSERT_EQ(e.code, 0) << e.out;
      EXPECT_NE(e.out.find("capacity 1683 bits"), std::string::npos) << e.out;
      ASSERT_EQ(run("extract " + stego + " " + path("out.bin") + " --bits 64 --identity " + identity).code, 0);
      EXPECT_EQ(codecs::read_file(path("out.bin")), codecs::read_file(path("msg.bin")));
    }
  }
}

TEST_F(CliTest, LengthPrefixedNeedsNoLength) {
  write_bytes("msg.bin", {1, 2, 3});
  ASSERT_EQ(run("embed " + path("card.png") + " " + path("s.gif") + " --message " + path("msg.bin") +
                " --bits 21 --framing length-prefixed").code,
            0);
  ASSERT_EQ(run("extract " + path("s.gif") + " " + path("out.txt") + " --framing length-prefixed --text").code, 0);
  const auto text = codecs::read_file(path("out.txt"));
  EXPECT_EQ(std::string(text.begin(), text.end()), Message::from_bytes(std::vector<std::uint8_t>{1, 2, 3}, 21).to_string() + "\n");
}

TEST_F(CliTest, EmptyMessageGivesIdentityStego) {
  write_bytes("empty.bin", {});
  ASSERT_EQ(run("embed " + path("card.png") + " " + path("s.png") + " --message " + path("empty.bin")).code, 0);
  EXPECT_EQ(codecs::read_image(path("s.png")).image, canonicalize(card_));
}

TEST_F(CliTest, RenderHashUnchangedByEmbedding) {
  write_bytes("msg.bin", {0xDE, 0xAD, 0xBE, 0xEF});
  ASSERT_EQ(run("embed " + path("card.png") + " " + path("s.gif") + " --message " + path("msg.bin")).code, 0);
  const auto a = run("inspect --render-hash " + path("card.png"));
  const auto b = run("inspect --render-hash " + path("s.gif"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out.size(), 17U);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(codecs::read_image(path("s.gif")).image.palette, card_.palette);
}

TEST_F(CliTest, BinaryImageShapeEndToEnd) {
  std::mt19937_64 rng(41);
  IndexedImage pattern{41, 41, {}, {{255, 255, 255}, {0, 0, 0}}};
  for (int i = 0; i < 41 * 41; ++i) pattern.indices.push_back(static_cast<std::uint8_t>(rng() & 1U));
  codecs::write_image(path("pattern.palimg"), pattern);
  ASSERT_EQ(run("keygen 1681 " + path("pad.key")).code, 0);
  ASSERT_EQ(run("embed " + path("card.png") + " " + path("s.png") + " --image " + path("pattern.palimg") +
                " --otp " + path("pad.key")).code,
            0);
  ASSERT_EQ(run("extract " + path("s.png") + " " + path("back.palimg") + " --shape 41x41 --otp " +
                path("pad.key")).code,
            0);
  EXPECT_EQ(codecs::read_image(path("back.palimg")).image, pattern);
  // Without the pad the recovered bits differ.
  ASSERT_EQ(run("extract " + path("s.png") + " " + path("raw.palimg") + " --shape 41x41").code, 0);
  EXPECT_NE(codecs::read_image(path("raw.palimg")).image, pattern);
}

TEST_F(CliTest, CapacityCommand) {
  const auto r = run("capacity " + path("card.png"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("colors: 256\n"), std::string::npos);
  EXPECT_NE(r.out.find("capacity_bits: 1683\n"), std::string::npos);
}

TEST_F(CliTest, InspectListsPaletteAndPermutation) {
  codecs::write_image(path("small.palimg"), IndexedImage{3, 1, {0, 1, 2}, {{1, 0, 0}, {0, 0, 2}, {0, 3, 0}}});
  const auto r = run("inspect --natural-keys " + path("small.palimg"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dimensions: 3x1"), std::string::npos);
  EXPECT_NE(r.out.find("0: 1 0 0 key=65536"), std::string::npos);
  EXPECT_NE(r.out.find("permutation: 0 1 2"), std::string::npos);
  const auto n = run("inspect --identity natural-sort " + path("small.palimg"));
  EXPECT_NE(n.out.find("permutation: 1 2 0"), std::string::npos) << n.out;
}

TEST_F(CliTest, NegativeTwiceIsByteIdentity) {
  codecs::write_image(path("card.palimg"), card_);
  ASSERT_EQ(run("negative " + path("card.palimg") + " " + path("n1.palimg")).code, 0);
  ASSERT_EQ(run("negative " + path("n1.palimg") + " " + path("n2.palimg")).code, 0);
  EXPECT_NE(codecs::read_file(path("n1.palimg")), codecs::read_file(path("card.palimg")));
  EXPECT_EQ(codecs::read_file(path("n2.palimg")), codecs::read_file(path("card.palimg")));
  EXPECT_EQ(run("inspect --render-hash " + path("n1.palimg")).out,
            run("inspect --render-hash " + path("card.palimg")).out);
}

TEST_F(CliTest, KeygenModes) {
  ASSERT_EQ(run("keygen 0 " + path("empty.key")).code, 0);
  EXPECT_EQ(otp::decode_key_file(codecs::read_file(path("empty.key"))).size(), 0U);
  ASSERT_EQ(run("keygen 100 " + path("seeded.key"), "PALSTEGO_SEED=42").code, 0);
  EXPECT_EQ(codecs::read_file(path("seeded.key")), codecs::read_file(PALSTEGO_TEST_DATA "/seed42_100.key"));
}

TEST_F(CliTest, ExitCodes) {
  write_bytes("big.bin", std::vector<std::uint8_t>(300, 0xAB));
  EXPECT_EQ(run("embed " + path("card.png") + " " + path("s.png") + " --message " + path("big.bin")).code, 2);

  write_bytes("junk.png", {1, 2, 3, 4});
  write_bytes("m.bin", {1});
  EXPECT_EQ(run("embed " + path("junk.png") + " " + path("s.png") + " --message " + path("m.bin")).code, 3);

  codecs::write_image(path("dup.palimg"), IndexedImage{3, 1, {0, 1, 2}, {{1, 1, 1}, {2, 2, 2}, {1, 1, 1}}});
  EXPECT_EQ(run("embed " + path("dup.palimg") + " " + path("s.png") + " --message " + path("m.bin") +
                " --bits 1 --strict").code,
            4);
  EXPECT_EQ(run("extract " + path("dup.palimg") + " " + path("o.bin") + " --bits 1").code, 5);

  EXPECT_EQ(run("extract " + path("card.png") + " " + path("o.bin")).code, 1);  // raw without length
  EXPECT_EQ(run("extract " + path("card.png") + " " + path("o.bin") + " --bits 2000").code, 6);
  EXPECT_EQ(run("bogus").code, 1);

  // Wrong identity mode reads an unrelated rank: too wide for 8 bits, accepted at full width.
  ASSERT_EQ(run("embed " + path("card.png") + " " + path("s.png") + " --message " + path("m.bin")).code, 0);
  EXPECT_EQ(run("extract " + path("s.png") + " " + path("o.bin") + " --bits 8 --identity natural-sort").code, 6);
  EXPECT_EQ(run("extract " + path("s.png") + " " + path("o.bin") + " --bits 1684 --identity natural-sort").code, 0);
}
