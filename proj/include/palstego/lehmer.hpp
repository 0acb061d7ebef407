#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "palstego/errors.hpp"
#include "palstego/factoradic.hpp"
#include "palstego/natural.hpp"

namespace palstego {

// A bijection on {0..n-1}, stored as the sequence (x_1 ... x_n).
class Permutation {
 public:
  using Value = std::uint32_t;

  Permutation() = default;
  explicit Permutation(std::vector<Value> mapping) : map_(std::move(mapping)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t i = 0; i < map_.size(); ++i) {
      const Value v = map_[i];
      if (v >= map_.size()) {
        throw InvalidPermutationError("entry " + std::to_string(v) + " at position " +
                                      std::to_string(i) + " is out of range");
      }
      if (seen[v]) throw InvalidPermutationError("entry " + std::to_string(v) + " repeats");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<Value> v(n);
    std::iota(v.begin(), v.end(), Value{0});
    return Permutation(std::move(v));
  }

  static Permutation reversal(std::size_t n) {
    std::vector<Value> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Value>(n - 1 - i);
    return Permutation(std::move(v));
  }

  // Space-separated decimal values.
  static Permutation parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Value> v;
    long long x = 0;
    while (in >> x) {
      if (x < 0) throw InvalidPermutationError("negative entry");
      v.push_back(static_cast<Value>(x));
    }
    if (!in.eof()) throw InvalidPermutationError("non-numeric entry in permutation text");
    return Permutation(std::move(v));
  }

  std::size_t degree() const noexcept { return map_.size(); }
  Value operator[](std::size_t i) const { return map_[i]; }
  const std::vector<Value>& values() const noexcept { return map_; }
  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] != i) return false;
    return true;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < map_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(map_[i]);
    }
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Value> map_;
};

// Inversion table (t_1 ... t_n): t_k counts later positions holding a smaller
// value than position k. Bounds 0 <= t_k <= n-k.
class InversionVector {
 public:
  using Count = std::uint32_t;

  explicit InversionVector(std::vector<Count> counts) : t_(std::move(counts)) {
    const std::size_t n = t_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (t_[i] > n - 1 - i) {
        throw InversionRangeError("t_" + std::to_string(i + 1) + " = " + std::to_string(t_[i]) +
                                  " exceeds " + std::to_string(n - 1 - i));
      }
    }
  }

  std::size_t degree() const noexcept { return t_.size(); }
  Count operator[](std::size_t i) const { return t_[i]; }
  const std::vector<Count>& counts() const noexcept { return t_; }

  friend bool operator==(const InversionVector&, const InversionVector&) = default;

 private:
  std::vector<Count> t_;
};

inline InversionVector inversions_of(const Permutation& p) {
  const std::size_t n = p.degree();
  std::vector<InversionVector::Count> t(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = k + 1; j < n; ++j)
      if (p[j] < p[k]) ++t[k];
  return InversionVector(std::move(t));
}

// Position k takes the t_k-th smallest value not used yet.
inline Permutation permutation_from_inversions(const InversionVector& t) {
  const std::size_t n = t.degree();
  std::vector<Permutation::Value> remaining(n);
  std::iota(remaining.begin(), remaining.end(), Permutation::Value{0});
  std::vector<Permutation::Value> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto it = remaining.begin() + static_cast<std::ptrdiff_t>(t[k]);
    out.push_back(*it);
    remaining.erase(it);
  }
  return Permutation(std::move(out));
}

// Lexicographic rank: t_k is the factorial digit of weight (n-k)!.
inline Natural rank(const Permutation& p) {
  if (p.degree() == 0) return Natural{};
  const InversionVector inv = inversions_of(p);
  const auto& t = inv.counts();
  return from_factoradic(FactoradicDigits::from_most_significant(
      std::vector<FactoradicDigits::Digit>(t.begin(), t.end())));
}

inline Permutation unrank(const Natural& m, std::size_t n) {
  if (n == 0) {
    if (!m.is_zero()) throw OverflowError("only rank 0 exists for degree 0");
    return Permutation{};
  }
  const auto digits = to_factoradic(m, n).most_significant_first();
  return permutation_from_inversions(
      InversionVector(std::vector<InversionVector::Count>(digits.begin(), digits.end())));
}

}  // namespace palstego
