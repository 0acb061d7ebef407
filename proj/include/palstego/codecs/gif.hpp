#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "palstego/codecs/codec_image.hpp"
#include "palstego/errors.hpp"
#include "palstego/palette_image.hpp"

// Single-frame GIF with a global color table. The table is kept in stored
// order; on write, palettes whose length is not a power of two are padded
// with black entries no pixel refers to.
namespace palstego::codecs::gif {

inline constexpr int kMaxCodeBits = 12;
inline constexpr std::uint32_t kMaxCodes = 1U << kMaxCodeBits;

// LZW with variable code width, codes packed least significant bit first.
// The output is the raw code stream (not yet split into sub-blocks).
inline std::vector<std::uint8_t> lzw_encode(std::span<const std::uint8_t> indices,
                                            int min_code_size) {
  if (min_code_size < 2 || min_code_size > 8) throw LzwError("LZW minimum code size must be 2..8");
  const std::uint32_t clear = 1U << min_code_size;
  const std::uint32_t eoi = clear + 1;

  std::vector<std::uint8_t> out;
  std::uint32_t acc = 0;
  int acc_bits = 0;
  int width = min_code_size + 1;
  auto emit = [&](std::uint32_t code) {
    acc |= code << acc_bits;
    acc_bits += width;
    while (acc_bits >= 8) {
      out.push_back(static_cast<std::uint8_t>(acc));
      acc >>= 8;
      acc_bits -= 8;
    }
  };

  std::unordered_map<std::uint32_t, std::uint32_t> dict;
  std::uint32_t next = eoi + 1;
  emit(clear);
  if (!indices.empty()) {
    for (auto v : indices) {
      if (v >= clear) throw LzwError("pixel value " + std::to_string(v) + " exceeds code alphabet");
    }
    std::uint32_t cur = indices[0];
    for (std::size_t i = 1; i < indices.size(); ++i) {
      const std::uint32_t b = indices[i];
      const std::uint32_t key = (cur << 8) | b;
      if (auto it = dict.find(key); it != dict.end()) {
        cur = it->second;
        continue;
      }
      emit(cur);
      const std::uint32_t assigned = next++;
      dict.emplace(key, assigned);
      if (assigned >= (1U << width) && width < kMaxCodeBits) ++width;
      if (assigned == kMaxCodes - 1) {
        emit(clear);
        dict.clear();
        next = eoi + 1;
        width = min_code_size + 1;
      }
      cur = b;
    }
    emit(cur);
    // The decoder adds one more entry on reading the last code and may widen
    // before it reads the end code.
    if (next == (1U << width) && width < kMaxCodeBits) ++width;
  }
  emit(eoi);
  if (acc_bits > 0) out.push_back(static_cast<std::uint8_t>(acc));
  return out;
}

// Decodes until the end code; returns exactly `pixel_count` values. Extra
// trailing pixels are dropped, a short stream is an error.
inline std::vector<std::uint8_t> lzw_decode(std::span<const std::uint8_t> data, int min_code_size,
                                            std::size_t pixel_count) {
  if (min_code_size < 2 || min_code_size > 8) throw LzwError("LZW minimum code size must be 2..8");
  const std::uint32_t clear = 1U << min_code_size;
  const std::uint32_t eoi = clear + 1;

  std::vector<std::uint16_t> prefix(kMaxCodes);
  std::vector<std::uint8_t> suffix(kMaxCodes);
  std::vector<std::uint8_t> first(kMaxCodes);
  for (std::uint32_t c = 0; c < clear; ++c) {
    suffix[c] = static_cast<std::uint8_t>(c);
    first[c] = static_cast<std::uint8_t>(c);
  }

  std::vector<std::uint8_t> out;
  out.reserve(pixel_count);
  std::vector<std::uint8_t> stack;
  int width = min_code_size + 1;
  std::uint32_t next = eoi + 1;
  bool have_prev = false;
  std::uint32_t prev = 0;
  std::size_t bitpos = 0;
  const std::size_t total_bits = data.size() * 8;

  auto emit_string = [&](std::uint32_t code) {
    stack.clear();
    while (code >= clear) {
      stack.push_back(suffix[code]);
      code = prefix[code];
    }
    stack.push_back(static_cast<std::uint8_t>(code));
    out.insert(out.end(), stack.rbegin(), stack.rend());
  };

  bool ended = false;
  while (bitpos + static_cast<std::size_t>(width) <= total_bits) {
    std::uint32_t code = 0;
    for (int i = 0; i < width; ++i, ++bitpos)
      code |= static_cast<std::uint32_t>((data[bitpos / 8] >> (bitpos % 8)) & 1U) << i;

    if (code == clear) {
      width = min_code_size + 1;
      next = eoi + 1;
      have_prev = false;
      continue;
    }
    if (code == eoi) {
      ended = true;
      break;
    }
    if (!have_prev) {
      if (code >= clear) throw LzwError("first code after clear is not a literal");
      out.push_back(static_cast<std::uint8_t>(code));
      prev = code;
      have_prev = true;
      continue;
    }
    if (code < next) {
      emit_string(code);
      if (next < kMaxCodes) {
        prefix[next] = static_cast<std::uint16_t>(prev);
        suffix[next] = first[code];
        first[next] = first[prev];
        ++next;
      }
    } else if (code == next && next < kMaxCodes) {
      prefix[next] = static_cast<std::uint16_t>(prev);
      suffix[next] = first[prev];
      first[next] = first[prev];
      ++next;
      emit_string(code);
    } else {
      throw LzwError("code " + std::to_string(code) + " is not yet defined");
    }
    if (next == (1U << width) && width < kMaxCodeBits) ++width;
    prev = code;
    if (out.size() > pixel_count + kMaxCodes) break;
  }
  if (out.size() < pixel_count) {
    throw LzwError("code stream ended after " + std::to_string(out.size()) + " of " +
                   std::to_string(pixel_count) + " pixels" + (ended ? "" : " (no end code)"));
  }
  out.resize(pixel_count);
  return out;
}

namespace detail {

using codecs::detail::ByteReader;

inline std::vector<std::uint8_t> read_sub_blocks(ByteReader& in) {
  std::vector<std::uint8_t> out;
  for (;;) {
    const std::uint8_t n = in.u8();
    if (n == 0) return out;
    const auto block = in.take(n);
    out.insert(out.end(), block.begin(), block.end());
  }
}

inline std::vector<std::uint8_t> deinterlace(const std::vector<std::uint8_t>& rows,
                                             std::size_t width, std::size_t height) {
  std::vector<std::uint8_t> out(rows.size());
  static constexpr std::size_t kStart[] = {0, 4, 2, 1};
  static constexpr std::size_t kStep[] = {8, 8, 4, 2};
  std::size_t src = 0;
  for (int pass = 0; pass < 4; ++pass) {
    for (std::size_t y = kStart[pass]; y < height; y += kStep[pass], ++src) {
      std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(src * width), width,
                  out.begin() + static_cast<std::ptrdiff_t>(y * width));
    }
  }
  return out;
}

}  // namespace detail

inline CodecImage read_gif(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes);
  if (bytes.size() < 6) throw HeaderError("file too short for a GIF header");
  const auto magic = in.take(6);
  const std::string sig(magic.begin(), magic.end());
  if (sig != "GIF87a" && sig != "GIF89a") throw HeaderError("not a GIF file (magic '" + sig + "')");

  CodecImage out;
  out.format = ImageFormat::Gif;
  out.gif_version = sig.substr(3);

  const std::uint16_t screen_w = in.le16();
  const std::uint16_t screen_h = in.le16();
  const std::uint8_t flags = in.u8();
  in.u8();  // background color index
  in.u8();  // pixel aspect ratio
  if ((flags & 0x80) == 0) throw FormatError("GIF has no global color table");
  out.gif_table_exponent = (flags & 0x07) + 1;
  const std::size_t table_size = std::size_t{1} << out.gif_table_exponent;
  const auto table = in.take(table_size * 3);
  for (std::size_t i = 0; i < table_size; ++i)
    out.image.palette.push_back({table[3 * i], table[3 * i + 1], table[3 * i + 2]});

  bool have_image = false;
  while (!in.at_end()) {
    const std::uint8_t intro = in.u8();
    if (intro == 0x3B) break;
    if (intro == 0x21) {
      in.u8();  // extension label
      detail::read_sub_blocks(in);
      continue;
    }
    if (intro != 0x2C) throw FormatError("unexpected block introducer " + std::to_string(intro));
    if (have_image) throw FormatError("multi-frame GIF is not supported");

    const std::uint16_t left = in.le16();
    const std::uint16_t top = in.le16();
    const std::uint16_t w = in.le16();
    const std::uint16_t h = in.le16();
    const std::uint8_t image_flags = in.u8();
    if (image_flags & 0x80) throw LocalColorTableUnsupportedError("GIF frame has a local color table");
    if (left != 0 || top != 0 || w != screen_w || h != screen_h || w == 0 || h == 0) {
      throw FormatError("GIF frame does not cover the logical screen");
    }
    const int min_code_size = in.u8();
    const auto stream = detail::read_sub_blocks(in);
    auto pixels = lzw_decode(stream, min_code_size, std::size_t{w} * h);
    if (image_flags & 0x40) pixels = detail::deinterlace(pixels, w, h);
    for (auto v : pixels) {
      if (v >= table_size) throw FormatError("pixel refers past the end of the color table");
    }
    out.image.width = w;
    out.image.height = h;
    out.image.indices = std::move(pixels);
    have_image = true;
  }
  if (!have_image) throw FormatError("GIF contains no image");
  return out;
}

// Smallest k >= 1 with 2^k >= n.
inline int table_exponent_for(std::size_t n) {
  int k = 1;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

inline std::vector<std::uint8_t> write_gif(const IndexedImage& img) {
  img.validate();
  if (img.width > 0xFFFF || img.height > 0xFFFF) throw FormatError("GIF dimensions exceed 65535");
  const int k = table_exponent_for(img.palette.size());
  std::vector<std::uint8_t> out = {'G', 'I', 'F', '8', '9', 'a'};
  codecs::detail::put_le16(out, static_cast<std::uint16_t>(img.width));
  codecs::detail::put_le16(out, static_cast<std::uint16_t>(img.height));
  out.push_back(static_cast<std::uint8_t>(0x80 | ((k - 1) << 4) | (k - 1)));
  out.push_back(0);
  out.push_back(0);
  for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
    const Rgb c = i < img.palette.size() ? img.palette[i] : Rgb{};
    out.insert(out.end(), {c.r, c.g, c.b});
  }

  out.push_back(0x2C);
  codecs::detail::put_le16(out, 0);
  codecs::detail::put_le16(out, 0);
  codecs::detail::put_le16(out, static_cast<std::uint16_t>(img.width));
  codecs::detail::put_le16(out, static_cast<std::uint16_t>(img.height));
  out.push_back(0);

  const int min_code_size = k < 2 ? 2 : k;
  out.push_back(static_cast<std::uint8_t>(min_code_size));
  const auto stream = lzw_encode(img.indices, min_code_size);
  for (std::size_t pos = 0; pos < stream.size(); pos += 255) {
    const std::size_t n = std::min<std::size_t>(255, stream.size() - pos);
    out.push_back(static_cast<std::uint8_t>(n));
    out.insert(out.end(), stream.begin() + static_cast<std::ptrdiff_t>(pos),
               stream.begin() + static_cast<std::ptrdiff_t>(pos + n));
  }
  out.push_back(0);
  out.push_back(0x3B);
  return out;
}

inline std::vector<std::uint8_t> write_gif(const CodecImage& img) { return write_gif(img.image); }

}  // namespace palstego::codecs::gif
