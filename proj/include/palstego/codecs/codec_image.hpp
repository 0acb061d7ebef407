#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "palstego/errors.hpp"
#include "palstego/palette_image.hpp"

namespace palstego::codecs {

enum class ImageFormat { Png, Gif, Palimg };

inline const char* format_name(ImageFormat f) {
  switch (f) {
    case ImageFormat::Png:
      return "png";
    case ImageFormat::Gif:
      return "gif";
    case ImageFormat::Palimg:
      return "palimg";
  }
  return "?";
}

// A decoded image plus what the container said about it. Codecs keep the
// palette exactly as stored: order, values and unused trailing entries.
struct CodecImage {
  IndexedImage image;
  ImageFormat format = ImageFormat::Palimg;
  int png_bit_depth = 8;        // PNG: stored bit depth (1, 2, 4 or 8)
  std::string gif_version;      // GIF: "87a" or "89a"
  int gif_table_exponent = 0;   // GIF: global table holds 2^exponent colors
};

namespace detail {

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  std::size_t position() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= data_.size(); }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (remaining() < n) throw FormatError("unexpected end of data");
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t le16() {
    auto b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t be32() {
    auto b = take(4);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           b[3];
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

inline void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_le16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

// Upper bound on decoded pixels, keeps hostile headers from exhausting memory.
inline constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

}  // namespace detail
}  // namespace palstego::codecs
