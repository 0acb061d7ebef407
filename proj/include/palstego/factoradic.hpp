#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "palstego/errors.hpp"
#include "palstego/natural.hpp"

namespace palstego {

inline Natural factorial(std::uint32_t n) {
  Natural r(1);
  for (std::uint32_t k = 2; k <= n; ++k) r.mul_small(k);
  return r;
}

// Digits (a_1 ... a_n) of the factorial number system, m = sum a_k (k-1)!,
// with 0 <= a_k <= k-1. Digit positions are 1-based in the accessors to match
// the usual notation; storage is ascending weight.
class FactoradicDigits {
 public:
  using Digit = std::uint32_t;

  // Digits given lowest weight first: (a_1, a_2, ..., a_n).
  static FactoradicDigits from_ascending(std::vector<Digit> ascending) {
    return FactoradicDigits(std::move(ascending));
  }

  // Digits given in display order: (a_n, ..., a_1).
  static FactoradicDigits from_most_significant(std::vector<Digit> msf) {
    return FactoradicDigits(std::vector<Digit>(msf.rbegin(), msf.rend()));
  }

  std::size_t size() const noexcept { return digits_.size(); }

  // a_k for k in 1..size().
  Digit digit(std::size_t k) const { return digits_.at(k - 1); }

  const std::vector<Digit>& ascending() const noexcept { return digits_; }

  std::vector<Digit> most_significant_first() const {
    return {digits_.rbegin(), digits_.rend()};
  }

  // "(a_n, ..., a_1)_!"
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = digits_.size(); i-- > 0;) {
      out += std::to_string(digits_[i]);
      if (i != 0) out += ", ";
    }
    return out + ")_!";
  }

  friend bool operator==(const FactoradicDigits&, const FactoradicDigits&) = default;

 private:
  explicit FactoradicDigits(std::vector<Digit> ascending) : digits_(std::move(ascending)) {
    if (digits_.empty()) throw DigitRangeError("factoradic register needs at least one digit");
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (digits_[i] > i) {
        throw DigitRangeError("digit a_" + std::to_string(i + 1) + " = " +
                              std::to_string(digits_[i]) + " exceeds " + std::to_string(i));
      }
    }
  }

  std::vector<Digit> digits_;
};

// a_k = floor(m / (k-1)!) mod k, by repeated division. Throws OverflowError
// when m does not fit an n-digit register, i.e. m >= n!.
inline FactoradicDigits to_factoradic(Natural m, std::size_t n) {
  if (n == 0) throw DigitRangeError("factoradic register needs at least one digit");
  std::vector<FactoradicDigits::Digit> digits(n);
  for (std::size_t k = 1; k <= n; ++k) digits[k - 1] = m.div_small(static_cast<Natural::Limb>(k));
  if (!m.is_zero()) {
    throw OverflowError("value does not fit in " + std::to_string(n) + " factorial digits");
  }
  return FactoradicDigits::from_ascending(std::move(digits));
}

inline Natural from_factoradic(const FactoradicDigits& d) {
  Natural m;
  for (std::size_t k = d.size(); k >= 1; --k) {
    m.mul_small(static_cast<Natural::Limb>(k));
    m += Natural(d.digit(k));
  }
  return m;
}

}  // namespace palstego
