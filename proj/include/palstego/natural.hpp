#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "palstego/errors.hpp"

namespace palstego {

// Arbitrary-precision non-negative integer.
//
// Only the operations the factorial number system needs are provided:
// addition, subtraction, multiplication and division by a machine word,
// bit shifts, and conversion to/from bit strings and decimal text. Values
// around 256! (1684 bits) are the working range.
class Natural {
 public:
  using Limb = std::uint32_t;

  Natural() = default;
  Natural(std::uint64_t value) {  // NOLINT(google-explicit-constructor)
    while (value != 0) {
      limbs_.push_back(static_cast<Limb>(value));
      value >>= 32;
    }
  }

  static Natural power_of_two(std::size_t exponent) {
    Natural r;
    r.limbs_.assign(exponent / 32 + 1, 0);
    r.limbs_.back() = Limb{1} << (exponent % 32);
    return r;
  }

  // Bits are read most significant first; leading zeros are allowed.
  static Natural from_bits(const std::vector<bool>& msb_first) {
    Natural r;
    const std::size_t n = msb_first.size();
    r.limbs_.assign(n / 32 + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (msb_first[i]) {
        const std::size_t pos = n - 1 - i;
        r.limbs_[pos / 32] |= Limb{1} << (pos % 32);
      }
    }
    r.trim();
    return r;
  }

  static Natural from_decimal(std::string_view text) {
    if (text.empty()) throw Error("empty decimal string");
    Natural r;
    for (char c : text) {
      if (c < '0' || c > '9') throw Error("invalid decimal digit in '" + std::string(text) + "'");
      r.mul_small(10);
      r += Natural(static_cast<std::uint64_t>(c - '0'));
    }
    return r;
  }

  bool is_zero() const noexcept { return limbs_.empty(); }

  std::size_t bit_length() const noexcept {
    if (limbs_.empty()) return 0;
    Limb top = limbs_.back();
    std::size_t bits = 0;
    while (top != 0) {
      ++bits;
      top >>= 1;
    }
    return (limbs_.size() - 1) * 32 + bits;
  }

  bool bit(std::size_t pos) const noexcept {
    const std::size_t limb = pos / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (pos % 32)) & 1U;
  }

  // Exactly `width` bits, most significant first, left-padded with zeros.
  std::vector<bool> to_bits(std::size_t width) const {
    if (bit_length() > width) {
      throw OverflowError("value needs " + std::to_string(bit_length()) +
                          " bits, only " + std::to_string(width) + " available");
    }
    std::vector<bool> out(width);
    for (std::size_t i = 0; i < width; ++i) out[i] = bit(width - 1 - i);
    return out;
  }

  std::optional<std::uint64_t> to_u64() const noexcept {
    if (limbs_.size() > 2) return std::nullopt;
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    return v;
  }

  std::string to_decimal() const {
    if (is_zero()) return "0";
    Natural tmp = *this;
    std::string out;
    // Peel off nine decimal digits per division.
    while (!tmp.is_zero()) {
      Limb chunk = tmp.div_small(1000000000U);
      for (int i = 0; i < 9; ++i) {
        out.push_back(static_cast<char>('0' + chunk % 10));
        chunk /= 10;
        if (tmp.is_zero() && chunk == 0) break;
      }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    std::reverse(out.begin(), out.end());
    return out;
  }

  Natural& mul_small(Limb factor) {
    if (factor == 0) {
      limbs_.clear();
      return *this;
    }
    std::uint64_t carry = 0;
    for (Limb& limb : limbs_) {
      const std::uint64_t t = std::uint64_t{limb} * factor + carry;
      limb = static_cast<Limb>(t);
      carry = t >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<Limb>(carry));
    return *this;
  }

  // Divides in place and returns the remainder.
  Limb div_small(Limb divisor) {
    if (divisor == 0) throw Error("division by zero");
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      const std::uint64_t cur = (rem << 32) | limbs_[i];
      limbs_[i] = static_cast<Limb>(cur / divisor);
      rem = cur % divisor;
    }
    trim();
    return static_cast<Limb>(rem);
  }

  Natural& operator+=(const Natural& rhs) {
    if (rhs.limbs_.size() > limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      const std::uint64_t t =
          std::uint64_t{limbs_[i]} + (i < rhs.limbs_.size() ? rhs.limbs_[i] : 0) + carry;
      limbs_[i] = static_cast<Limb>(t);
      carry = t >> 32;
      if (carry == 0 && i >= rhs.limbs_.size()) break;
    }
    if (carry != 0) limbs_.push_back(static_cast<Limb>(carry));
    return *this;
  }

  Natural& operator-=(const Natural& rhs) {
    if (*this < rhs) throw OverflowError("natural subtraction would go negative");
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::int64_t t = std::int64_t{limbs_[i]} -
                       (i < rhs.limbs_.size() ? std::int64_t{rhs.limbs_[i]} : 0) - borrow;
      borrow = t < 0 ? 1 : 0;
      if (t < 0) t += std::int64_t{1} << 32;
      limbs_[i] = static_cast<Limb>(t);
    }
    trim();
    return *this;
  }

  Natural& operator<<=(std::size_t shift) {
    if (is_zero() || shift == 0) return *this;
    const std::size_t words = shift / 32;
    const unsigned bits = static_cast<unsigned>(shift % 32);
    std::vector<Limb> out(limbs_.size() + words + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      const std::uint64_t v = std::uint64_t{limbs_[i]} << bits;
      out[i + words] |= static_cast<Limb>(v);
      out[i + words + 1] |= static_cast<Limb>(v >> 32);
    }
    limbs_ = std::move(out);
    trim();
    return *this;
  }

  Natural& operator>>=(std::size_t shift) {
    const std::size_t words = shift / 32;
    if (words >= limbs_.size()) {
      limbs_.clear();
      return *this;
    }
    const unsigned bits = static_cast<unsigned>(shift % 32);
    std::vector<Limb> out(limbs_.size() - words, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::uint64_t v = limbs_[i + words];
      if (i + words + 1 < limbs_.size()) v |= std::uint64_t{limbs_[i + words + 1]} << 32;
      out[i] = static_cast<Limb>(v >> bits);
    }
    limbs_ = std::move(out);
    trim();
    return *this;
  }

  friend Natural operator+(Natural lhs, const Natural& rhs) { return lhs += rhs; }
  friend Natural operator-(Natural lhs, const Natural& rhs) { return lhs -= rhs; }
  friend Natural operator<<(Natural lhs, std::size_t s) { return lhs <<= s; }
  friend Natural operator>>(Natural lhs, std::size_t s) { return lhs >>= s; }

  friend bool operator==(const Natural&, const Natural&) = default;

  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() <=> b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    }
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& n) {
    return os << n.to_decimal();
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<Limb> limbs_;  // little-endian, no high zero limbs
};

}  // namespace palstego
