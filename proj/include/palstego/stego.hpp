#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "palstego/errors.hpp"
#include "palstego/factoradic.hpp"
#include "palstego/lehmer.hpp"
#include "palstego/natural.hpp"
#include "palstego/palette_image.hpp"

namespace palstego {

// A finite bit string. As an integer, the first bit is the most significant.
struct Message {
  std::vector<bool> bits;

  std::size_t size() const noexcept { return bits.size(); }
  bool empty() const noexcept { return bits.empty(); }

  static Message from_string(std::string_view text) {
    Message m;
    m.bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw Error(std::string("invalid bit character '") + c + "'");
      m.bits.push_back(c == '1');
    }
    return m;
  }

  // First `bit_count` bits of `bytes`, most significant bit of each byte first.
  static Message from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
    if (bit_count > bytes.size() * 8) {
      throw LengthError("requested " + std::to_string(bit_count) + " bits from " +
                        std::to_string(bytes.size()) + " bytes");
    }
    Message m;
    m.bits.resize(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i) m.bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1U;
    return m;
  }

  static Message from_bytes(std::span<const std::uint8_t> bytes) {
    return from_bytes(bytes, bytes.size() * 8);
  }

  // Packs MSB-first; the final partial byte is zero-padded.
  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
    return out;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (bool b : bits) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const Message&, const Message&) = default;
};

struct BinaryImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<bool> bits;  // row-major

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;
};

enum class IdentityMode { FirstOccurrence, NaturalSort };
enum class Framing { Raw, LengthPrefixed };

struct StegoConfig {
  IdentityMode identity = IdentityMode::FirstOccurrence;
  Framing framing = Framing::Raw;
  // Reject covers whose used palette slots repeat a color instead of merging them.
  bool strict = false;
};

inline constexpr std::size_t kLengthPrefixBits = 16;

// Largest N with 2^N <= n!. Since n! >= 1 this is bit_length(n!) - 1.
inline std::size_t capacity(std::size_t n) {
  if (n < 1 || n > kMaxPaletteSize) {
    throw PaletteSizeError("capacity is defined for 1..256 colors, got " + std::to_string(n));
  }
  return factorial(static_cast<std::uint32_t>(n)).bit_length() - 1;
}

// Bits needed to write any rank below n!, i.e. bit_length(n! - 1). One more
// than capacity(n) unless n! is a power of two (n <= 2).
inline std::size_t readable_bits(std::size_t n) {
  if (n < 1 || n > kMaxPaletteSize) {
    throw PaletteSizeError("readable width is defined for 1..256 colors, got " + std::to_string(n));
  }
  return (factorial(static_cast<std::uint32_t>(n)) - Natural(1)).bit_length();
}

namespace detail {

inline std::vector<bool> frame(const Message& msg, std::size_t n, Framing framing) {
  const std::size_t cap = capacity(n);
  if (framing == Framing::Raw) {
    if (msg.size() > cap) {
      throw CapacityExceededError("message of " + std::to_string(msg.size()) +
                                  " bits exceeds capacity " + std::to_string(cap) + " of " +
                                  std::to_string(n) + " colors");
    }
    return msg.bits;
  }
  if (msg.size() >= (std::size_t{1} << kLengthPrefixBits) || kLengthPrefixBits + msg.size() > cap) {
    throw CapacityExceededError("message of " + std::to_string(msg.size()) +
                                " bits plus 16-bit length prefix exceeds capacity " +
                                std::to_string(cap) + " of " + std::to_string(n) + " colors");
  }
  // [16-bit big-endian length][message][zeros up to the full capacity]
  std::vector<bool> out(cap, false);
  for (std::size_t i = 0; i < kLengthPrefixBits; ++i)
    out[i] = (msg.size() >> (kLengthPrefixBits - 1 - i)) & 1U;
  for (std::size_t i = 0; i < msg.size(); ++i) out[kLengthPrefixBits + i] = msg.bits[i];
  return out;
}

inline IndexedImage identity_ordered(const IndexedImage& canonical, IdentityMode mode) {
  return mode == IdentityMode::NaturalSort ? sort_by_natural_key(canonical) : canonical;
}

}  // namespace detail

// Reorders the palette of `cover` so its order spells the framed message.
// The result renders pixel-for-pixel like the cover.
inline IndexedImage embed(const IndexedImage& cover, const Message& msg, const StegoConfig& cfg) {
  cover.validate();
  if (cfg.strict && has_duplicate_used_colors(cover)) {
    throw DuplicateColorError("cover palette repeats a color among used entries");
  }
  const IndexedImage identity = detail::identity_ordered(canonicalize(cover), cfg.identity);
  const std::size_t n = identity.palette.size();
  const Natural m = Natural::from_bits(detail::frame(msg, n, cfg.framing));
  return apply_permutation(identity, unrank(m, n));
}

// Permutation carrying the identity-ordered palette onto the stego palette
// order, recovered from the stego image alone.
inline Permutation recover_permutation(const IndexedImage& stego, IdentityMode mode) {
  const IndexedImage pruned = prune_unused(stego);
  if (has_duplicate_used_colors(pruned)) {
    throw PaletteMismatchError("stego palette repeats a color; it is not a permuted cover palette");
  }
  const Palette identity = mode == IdentityMode::NaturalSort
                               ? sort_by_natural_key(pruned).palette
                               : canonicalize(stego).palette;
  if (identity.size() != pruned.palette.size()) {
    throw PaletteMismatchError("stego palette is not a permutation of the recovered cover palette");
  }
  std::unordered_map<std::uint32_t, Permutation::Value> slot_of;
  for (std::size_t s = 0; s < pruned.palette.size(); ++s)
    slot_of.emplace(natural_key(pruned.palette[s]), static_cast<Permutation::Value>(s));
  std::vector<Permutation::Value> p(identity.size());
  for (std::size_t i = 0; i < identity.size(); ++i) {
    const auto it = slot_of.find(natural_key(identity[i]));
    if (it == slot_of.end()) {
      throw PaletteMismatchError("recovered cover color missing from stego palette");
    }
    p[i] = it->second;
  }
  return Permutation(std::move(p));
}

// Blind extraction. `expected_bits` is the message length for Raw framing; with
// LengthPrefixed framing it is optional and, when given, must match the prefix.
inline Message extract(const IndexedImage& stego, const StegoConfig& cfg,
                       std::optional<std::size_t> expected_bits = std::nullopt) {
  stego.validate();
  const Permutation p = recover_permutation(stego, cfg.identity);
  const std::size_t n = p.degree();
  const Natural m = rank(p);

  if (cfg.framing == Framing::Raw) {
    if (!expected_bits) throw LengthError("raw framing needs the message length");
    if (*expected_bits > readable_bits(n)) {
      throw LengthError("requested " + std::to_string(*expected_bits) + " bits but " +
                        std::to_string(n) + " colors hold at most " +
                        std::to_string(readable_bits(n)));
    }
    if (m.bit_length() > *expected_bits) {
      throw LengthError("palette order encodes a " + std::to_string(m.bit_length()) +
                        "-bit value, longer than the requested " +
                        std::to_string(*expected_bits) + " bits");
    }
    return Message{m.to_bits(*expected_bits)};
  }

  const std::size_t cap = capacity(n);
  if (cap < kLengthPrefixBits) {
    throw FramingError(std::to_string(n) + " colors cannot hold a length prefix");
  }
  if (m.bit_length() > cap) throw FramingError("palette order exceeds the framed width");
  const std::vector<bool> framed = m.to_bits(cap);
  std::size_t len = 0;
  for (std::size_t i = 0; i < kLengthPrefixBits; ++i) len = (len << 1) | framed[i];
  if (kLengthPrefixBits + len > cap) {
    throw FramingError("length prefix " + std::to_string(len) + " exceeds capacity " +
                       std::to_string(cap));
  }
  if (expected_bits && *expected_bits != len) {
    throw FramingError("length prefix " + std::to_string(len) + " differs from expected " +
                       std::to_string(*expected_bits));
  }
  Message out;
  out.bits.assign(framed.begin() + kLengthPrefixBits,
                  framed.begin() + static_cast<std::ptrdiff_t>(kLengthPrefixBits + len));
  return out;
}

inline Message pack_binary_image(const BinaryImage& img) {
  if (img.bits.size() != img.width * img.height) {
    throw DimensionMismatchError("binary image bit count does not match its dimensions");
  }
  return Message{img.bits};
}

inline BinaryImage unpack_binary_image(const Message& msg, std::size_t width, std::size_t height) {
  if (msg.size() != width * height) {
    throw DimensionMismatchError("message of " + std::to_string(msg.size()) +
                                 " bits cannot fill a " + std::to_string(width) + "x" +
                                 std::to_string(height) + " binary image");
  }
  return BinaryImage{width, height, msg.bits};
}

}  // namespace palstego
