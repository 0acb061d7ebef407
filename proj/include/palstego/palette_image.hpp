#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "palstego/errors.hpp"
#include "palstego/lehmer.hpp"

namespace palstego {

inline constexpr std::size_t kMaxPaletteSize = 256;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
  friend auto operator<=>(const Rgb&, const Rgb&) = default;
};

// Sort key of the "natural" palette order, 65536 R + 256 G + B.
constexpr std::uint32_t natural_key(Rgb c) noexcept {
  return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b;
}

using Palette = std::vector<Rgb>;

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;  // row-major

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Index array plus ordered palette. Indices are row-major, top-left first.
struct IndexedImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> indices;
  Palette palette;

  // Throws unless dimensions, palette length and index bounds are consistent.
  void validate() const {
    if (width == 0 || height == 0) throw DimensionMismatchError("image dimensions must be positive");
    if (indices.size() != width * height) {
      throw DimensionMismatchError("index array holds " + std::to_string(indices.size()) +
                                   " entries, expected " + std::to_string(width * height));
    }
    if (palette.empty() || palette.size() > kMaxPaletteSize) {
      throw PaletteSizeError("palette length " + std::to_string(palette.size()) +
                             " outside 1.." + std::to_string(kMaxPaletteSize));
    }
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] >= palette.size()) {
        throw IndexOutOfRangeError("pixel " + std::to_string(i) + " refers to palette slot " +
                                   std::to_string(indices[i]) + " of " +
                                   std::to_string(palette.size()));
      }
    }
  }

  friend bool operator==(const IndexedImage&, const IndexedImage&) = default;
};

inline RgbImage render(const IndexedImage& img) {
  img.validate();
  RgbImage out{img.width, img.height, {}};
  out.pixels.reserve(img.indices.size());
  for (std::uint8_t i : img.indices) out.pixels.push_back(img.palette[i]);
  return out;
}

// FNV-1a (64-bit) over width, height and the RGB bytes. Identifies a rendered
// appearance; not a cryptographic hash.
inline std::uint64_t render_digest(const RgbImage& rgb) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (std::uint64_t v : {static_cast<std::uint64_t>(rgb.width), static_cast<std::uint64_t>(rgb.height)})
    for (int i = 0; i < 8; ++i) mix(static_cast<std::uint8_t>(v >> (8 * i)));
  for (const Rgb& c : rgb.pixels) {
    mix(c.r);
    mix(c.g);
    mix(c.b);
  }
  return h;
}

// Deterministic lossless quantizer: palette = distinct colors in order of
// first appearance in a row-major scan.
inline IndexedImage quantize_first_occurrence(const RgbImage& rgb) {
  if (rgb.width == 0 || rgb.height == 0 || rgb.pixels.size() != rgb.width * rgb.height) {
    throw DimensionMismatchError("RGB image dimensions do not match its pixel count");
  }
  IndexedImage out{rgb.width, rgb.height, {}, {}};
  out.indices.reserve(rgb.pixels.size());
  std::unordered_map<std::uint32_t, std::uint8_t> slot_of;
  for (const Rgb& c : rgb.pixels) {
    const auto key = natural_key(c);
    auto it = slot_of.find(key);
    if (it == slot_of.end()) {
      if (out.palette.size() == kMaxPaletteSize) {
        throw TooManyColorsError("image has more than 256 distinct colors");
      }
      it = slot_of.emplace(key, static_cast<std::uint8_t>(out.palette.size())).first;
      out.palette.push_back(c);
    }
    out.indices.push_back(it->second);
  }
  return out;
}

inline IndexedImage canonicalize(const IndexedImage& img) {
  return quantize_first_occurrence(render(img));
}

inline bool is_canonical(const IndexedImage& img) { return canonicalize(img) == img; }

// Number of distinct colors among the palette entries the pixels use.
inline std::size_t distinct_used_colors(const IndexedImage& img) {
  return canonicalize(img).palette.size();
}

// True when two used palette slots hold the same color.
inline bool has_duplicate_used_colors(const IndexedImage& img) {
  img.validate();
  std::vector<bool> used(img.palette.size(), false);
  for (auto i : img.indices) used[i] = true;
  std::vector<std::uint32_t> keys;
  for (std::size_t s = 0; s < img.palette.size(); ++s)
    if (used[s]) keys.push_back(natural_key(img.palette[s]));
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) != keys.end();
}

// Drops palette entries no pixel refers to, keeping the stored order of the
// rest. Unlike canonicalize this never reorders the palette.
inline IndexedImage prune_unused(const IndexedImage& img) {
  img.validate();
  std::vector<bool> used(img.palette.size(), false);
  for (auto i : img.indices) used[i] = true;
  std::vector<std::uint8_t> remap(img.palette.size(), 0);
  IndexedImage out{img.width, img.height, {}, {}};
  for (std::size_t s = 0; s < img.palette.size(); ++s) {
    if (!used[s]) continue;
    remap[s] = static_cast<std::uint8_t>(out.palette.size());
    out.palette.push_back(img.palette[s]);
  }
  out.indices.reserve(img.indices.size());
  for (auto i : img.indices) out.indices.push_back(remap[i]);
  return out;
}

// New palette slot p[i] receives old color i; pixel indices are remapped so
// the rendered image is unchanged.
inline IndexedImage apply_permutation(const IndexedImage& img, const Permutation& p) {
  img.validate();
  if (p.degree() != img.palette.size()) {
    throw DegreeMismatchError("permutation of degree " + std::to_string(p.degree()) +
                              " applied to a palette of " + std::to_string(img.palette.size()));
  }
  IndexedImage out{img.width, img.height, {}, Palette(img.palette.size())};
  for (std::size_t i = 0; i < p.degree(); ++i) out.palette[p[i]] = img.palette[i];
  out.indices.reserve(img.indices.size());
  for (auto i : img.indices) out.indices.push_back(static_cast<std::uint8_t>(p[i]));
  return out;
}

// Slot i -> 255 - i for both palette rows and pixel indices.
inline IndexedImage negative(const IndexedImage& img) {
  if (img.palette.size() != kMaxPaletteSize) {
    throw PaletteSizeError("negative needs a 256-entry palette, got " +
                           std::to_string(img.palette.size()));
  }
  return apply_permutation(img, Permutation::reversal(kMaxPaletteSize));
}

// Permutation that sorts the palette by natural_key (stable on ties).
inline Permutation natural_sort_permutation(const Palette& palette) {
  std::vector<std::uint32_t> order(palette.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return natural_key(palette[a]) < natural_key(palette[b]);
  });
  std::vector<Permutation::Value> p(palette.size());
  for (std::uint32_t slot = 0; slot < order.size(); ++slot) p[order[slot]] = slot;
  return Permutation(std::move(p));
}

inline IndexedImage sort_by_natural_key(const IndexedImage& img) {
  return apply_permutation(img, natural_sort_permutation(img.palette));
}

}  // namespace palstego
