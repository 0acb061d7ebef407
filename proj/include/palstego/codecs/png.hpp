#pragma once

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "palstego/codecs/codec_image.hpp"
#include "palstego/errors.hpp"
#include "palstego/palette_image.hpp"

// Indexed-color PNG (color type 3). The PLTE chunk is read and written in
// stored order; nothing is sorted, merged or pruned.
namespace palstego::codecs::png {

inline constexpr std::array<std::uint8_t, 8> kSignature = {137, 80, 78, 71, 13, 10, 26, 10};

namespace detail {

using codecs::detail::ByteReader;
using codecs::detail::put_be32;

inline std::uint32_t chunk_crc(std::span<const std::uint8_t> type_and_data) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, type_and_data.data(), static_cast<uInt>(type_and_data.size())));
}

inline void put_chunk(std::vector<std::uint8_t>& out, const char (&type)[5],
                      std::span<const std::uint8_t> data) {
  put_be32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  put_be32(out, chunk_crc(std::span(out).subspan(start)));
}

inline std::vector<std::uint8_t> inflate_exact(std::span<const std::uint8_t> in,
                                               std::size_t expected) {
  std::vector<std::uint8_t> out(expected + 1);
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw FormatError("zlib initialisation failed");
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const std::size_t produced = out.size() - zs.avail_out;
  const std::string msg = zs.msg ? zs.msg : "";
  inflateEnd(&zs);
  if (rc == Z_DATA_ERROR && msg.find("check") != std::string::npos) {
    throw ChecksumError("zlib stream checksum mismatch");
  }
  if (rc != Z_STREAM_END) throw FormatError("corrupt or truncated image data: " + msg);
  if (produced != expected) {
    throw FormatError("image data holds " + std::to_string(produced) + " bytes, expected " +
                      std::to_string(expected));
  }
  out.resize(expected);
  return out;
}

inline std::uint8_t paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return static_cast<std::uint8_t>(a);
  if (pb <= pc) return static_cast<std::uint8_t>(b);
  return static_cast<std::uint8_t>(c);
}

// Reverses per-scanline filtering in place. Indexed images have one byte per
// filter unit at every bit depth.
inline std::vector<std::uint8_t> unfilter(const std::vector<std::uint8_t>& raw, std::size_t rows,
                                          std::size_t row_bytes) {
  std::vector<std::uint8_t> out(rows * row_bytes);
  for (std::size_t y = 0; y < rows; ++y) {
    const std::uint8_t filter = raw[y * (row_bytes + 1)];
    const std::uint8_t* src = &raw[y * (row_bytes + 1) + 1];
    std::uint8_t* cur = &out[y * row_bytes];
    const std::uint8_t* prev = y ? &out[(y - 1) * row_bytes] : nullptr;
    for (std::size_t x = 0; x < row_bytes; ++x) {
      const int a = x ? cur[x - 1] : 0;
      const int b = prev ? prev[x] : 0;
      const int c = (prev && x) ? prev[x - 1] : 0;
      int pred = 0;
      switch (filter) {
        case 0:
          break;
        case 1:
          pred = a;
          break;
        case 2:
          pred = b;
          break;
        case 3:
          pred = (a + b) / 2;
          break;
        case 4:
          pred = paeth(a, b, c);
          break;
        default:
          throw FormatError("unknown scanline filter type " + std::to_string(filter));
      }
      cur[x] = static_cast<std::uint8_t>(src[x] + pred);
    }
  }
  return out;
}

}  // namespace detail

inline CodecImage read_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSignature.size() ||
      !std::equal(kSignature.begin(), kSignature.end(), bytes.begin())) {
    throw SignatureError("not a PNG file (signature mismatch)");
  }
  detail::ByteReader in(bytes.subspan(kSignature.size()));

  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int depth = 0;
  bool have_header = false;
  bool seen_idat = false;
  bool seen_end = false;
  Palette palette;
  std::vector<std::uint8_t> compressed;

  while (!seen_end) {
    const std::uint32_t length = in.be32();
    const std::size_t chunk_start = in.position();
    const auto type_and_data = in.take(std::size_t{4} + length);
    const std::uint32_t stored_crc = in.be32();
    const std::string type(type_and_data.begin(), type_and_data.begin() + 4);
    if (detail::chunk_crc(type_and_data) != stored_crc) {
      throw ChecksumError("CRC mismatch in " + type + " chunk at offset " +
                          std::to_string(chunk_start + kSignature.size()));
    }
    const auto data = type_and_data.subspan(4);

    if (!have_header && type != "IHDR") throw FormatError("first chunk is " + type + ", not IHDR");
    if (type == "IHDR") {
      if (have_header) throw FormatError("duplicate IHDR chunk");
      if (length != 13) throw FormatError("IHDR chunk has wrong length");
      detail::ByteReader h(data);
      width = h.be32();
      height = h.be32();
      depth = h.u8();
      const int color_type = h.u8();
      const int compression = h.u8();
      const int filter = h.u8();
      const int interlace = h.u8();
      if (color_type != 3) {
        throw UnsupportedColorTypeError("PNG color type " + std::to_string(color_type) +
                                        " is not indexed (3)");
      }
      if (depth != 1 && depth != 2 && depth != 4 && depth != 8) {
        throw FormatError("invalid bit depth " + std::to_string(depth) + " for indexed PNG");
      }
      if (compression != 0 || filter != 0) throw FormatError("unknown compression or filter method");
      if (interlace != 0) throw FormatError("interlaced PNG is not supported");
      if (width == 0 || height == 0 || width > 0x7fffffffU || height > 0x7fffffffU ||
          std::size_t{width} * height > codecs::detail::kMaxPixels) {
        throw FormatError("unsupported PNG dimensions");
      }
      have_header = true;
    } else if (type == "PLTE") {
      if (!palette.empty()) throw FormatError("duplicate PLTE chunk");
      if (seen_idat) throw FormatError("PLTE after IDAT");
      if (length == 0 || length % 3 != 0 || length / 3 > kMaxPaletteSize) {
        throw FormatError("PLTE chunk length " + std::to_string(length) + " is invalid");
      }
      for (std::size_t i = 0; i < length; i += 3) palette.push_back({data[i], data[i + 1], data[i + 2]});
    } else if (type == "IDAT") {
      if (palette.empty()) throw FormatError("IDAT before PLTE");
      seen_idat = true;
      compressed.insert(compressed.end(), data.begin(), data.end());
    } else if (type == "IEND") {
      seen_end = true;
    } else if ((type[0] & 0x20) == 0) {
      throw FormatError("unknown critical chunk " + type);
    }
  }
  if (!seen_idat) throw FormatError("no IDAT chunk");

  const std::size_t row_bytes = (std::size_t{width} * depth + 7) / 8;
  const auto raw = detail::inflate_exact(compressed, std::size_t{height} * (row_bytes + 1));
  const auto rows = detail::unfilter(raw, height, row_bytes);

  CodecImage out;
  out.format = ImageFormat::Png;
  out.png_bit_depth = depth;
  out.image.width = width;
  out.image.height = height;
  out.image.palette = std::move(palette);
  out.image.indices.resize(std::size_t{width} * height);
  const unsigned mask = (1U << depth) - 1;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t bit = x * depth;
      const unsigned shift = 8 - depth - bit % 8;
      const auto v = static_cast<std::uint8_t>((rows[y * row_bytes + bit / 8] >> shift) & mask);
      if (v >= out.image.palette.size()) {
        throw FormatError("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                          ") refers past the end of the palette");
      }
      out.image.indices[y * width + x] = v;
    }
  }
  return out;
}

// Color type 3, bit depth 8, filter 0 on every row, one IDAT, zlib level 9.
inline std::vector<std::uint8_t> write_png(const IndexedImage& img) {
  img.validate();
  std::vector<std::uint8_t> out(kSignature.begin(), kSignature.end());

  std::vector<std::uint8_t> ihdr;
  detail::put_be32(ihdr, static_cast<std::uint32_t>(img.width));
  detail::put_be32(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.insert(ihdr.end(), {8, 3, 0, 0, 0});
  detail::put_chunk(out, "IHDR", ihdr);

  std::vector<std::uint8_t> plte;
  for (const Rgb& c : img.palette) plte.insert(plte.end(), {c.r, c.g, c.b});
  detail::put_chunk(out, "PLTE", plte);

  std::vector<std::uint8_t> raw;
  raw.reserve(img.height * (img.width + 1));
  for (std::size_t y = 0; y < img.height; ++y) {
    raw.push_back(0);
    raw.insert(raw.end(), img.indices.begin() + static_cast<std::ptrdiff_t>(y * img.width),
               img.indices.begin() + static_cast<std::ptrdiff_t>((y + 1) * img.width));
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), 9) != Z_OK) {
    throw CodecError("zlib compression failed");
  }
  packed.resize(packed_size);
  detail::put_chunk(out, "IDAT", packed);
  detail::put_chunk(out, "IEND", {});
  return out;
}

inline std::vector<std::uint8_t> write_png(const CodecImage& img) { return write_png(img.image); }

}  // namespace palstego::codecs::png
