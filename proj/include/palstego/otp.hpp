#pragma once

#include <sys/random.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "palstego/errors.hpp"
#include "palstego/stego.hpp"

namespace palstego::otp {

// Pad bits; one key protects exactly one message of the same length and must
// never be reused.
struct PadKey {
  std::vector<bool> bits;

  std::size_t size() const noexcept { return bits.size(); }
  friend bool operator==(const PadKey&, const PadKey&) = default;
};

namespace detail {

inline PadKey key_from_bytes(std::span<const std::uint8_t> bytes, std::size_t length) {
  return PadKey{Message::from_bytes(bytes, length).bits};
}

}  // namespace detail

// Draws `length` bits from the kernel CSPRNG.
inline PadKey keygen(std::size_t length) {
  std::vector<std::uint8_t> bytes((length + 7) / 8);
  std::size_t filled = 0;
  while (filled < bytes.size()) {
    const ssize_t got = ::getrandom(bytes.data() + filled, bytes.size() - filled, 0);
    if (got < 0) {
      if (errno == EINTR) continue;
      throw EntropyUnavailableError(std::string("getrandom failed: ") + std::strerror(errno));
    }
    filled += static_cast<std::size_t>(got);
  }
  return detail::key_from_bytes(bytes, length);
}

// TEST ONLY. Reproducible key bits from a seeded mt19937_64. Not secret.
inline PadKey keygen_seeded_for_testing(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PadKey key;
  key.bits.reserve(length);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (i % 64 == 0) word = rng();
    key.bits.push_back((word >> (63 - i % 64)) & 1U);
  }
  return key;
}

// Bitwise addition mod 2. Applying the same key twice restores the message.
inline Message apply_pad(const Message& msg, const PadKey& key) {
  if (msg.size() != key.size()) {
    throw LengthMismatchError("message has " + std::to_string(msg.size()) + " bits, key has " +
                              std::to_string(key.size()));
  }
  Message out;
  out.bits.resize(msg.size());
  for (std::size_t i = 0; i < msg.size(); ++i) out.bits[i] = msg.bits[i] != key.bits[i];
  return out;
}

// Key file: magic "OTPKEY\0\1", 8-byte big-endian bit length, packed bits
// (MSB first, last byte zero-padded).
inline constexpr std::array<std::uint8_t, 8> kKeyMagic = {'O', 'T', 'P', 'K', 'E', 'Y', 0, 1};

inline std::vector<std::uint8_t> encode_key_file(const PadKey& key) {
  std::vector<std::uint8_t> out(kKeyMagic.begin(), kKeyMagic.end());
  const std::uint64_t len = key.size();
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(len >> shift));
  const auto packed = Message{key.bits}.to_bytes();
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

inline PadKey decode_key_file(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 16 || !std::equal(kKeyMagic.begin(), kKeyMagic.end(), bytes.begin())) {
    throw KeyFileError("not an OTP key file (bad magic)");
  }
  std::uint64_t len = 0;
  for (std::size_t i = 8; i < 16; ++i) len = (len << 8) | bytes[i];
  const auto body = bytes.subspan(16);
  if (len > body.size() * 8 || (len + 7) / 8 != body.size()) {
    throw KeyFileError("key file body holds " + std::to_string(body.size()) +
                       " bytes, header declares " + std::to_string(len) + " bits");
  }
  return detail::key_from_bytes(body, static_cast<std::size_t>(len));
}

}  // namespace palstego::otp
