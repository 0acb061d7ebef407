#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "palstego/codecs/codec_image.hpp"
#include "palstego/codecs/gif.hpp"
#include "palstego/codecs/palimg.hpp"
#include "palstego/codecs/png.hpp"
#include "palstego/errors.hpp"

namespace palstego::codecs {

class IoError : public Error {
 public:
  using Error::Error;
};

inline std::optional<ImageFormat> parse_format(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (!lower.empty() && lower.front() == '.') lower.erase(0, 1);
  if (lower == "png") return ImageFormat::Png;
  if (lower == "gif") return ImageFormat::Gif;
  if (lower == "palimg") return ImageFormat::Palimg;
  return std::nullopt;
}

inline ImageFormat format_from_path(const std::filesystem::path& path) {
  if (auto f = parse_format(path.extension().string())) return *f;
  throw FormatError("cannot infer image format from '" + path.string() +
                    "' (expected .png, .gif or .palimg)");
}

inline CodecImage decode(std::span<const std::uint8_t> bytes, ImageFormat format) {
  switch (format) {
    case ImageFormat::Png:
      return png::read_png(bytes);
    case ImageFormat::Gif:
      return gif::read_gif(bytes);
    case ImageFormat::Palimg:
      return palimg::read_palimg(
          std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  }
  throw FormatError("unknown format");
}

inline std::vector<std::uint8_t> encode(const IndexedImage& img, ImageFormat format) {
  switch (format) {
    case ImageFormat::Png:
      return png::write_png(img);
    case ImageFormat::Gif:
      return gif::write_gif(img);
    case ImageFormat::Palimg: {
      const std::string text = palimg::write_palimg(img);
      return {text.begin(), text.end()};
    }
  }
  throw FormatError("unknown format");
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

inline CodecImage read_image(const std::filesystem::path& path,
                             std::optional<ImageFormat> format = std::nullopt) {
  return decode(read_file(path), format ? *format : format_from_path(path));
}

inline void write_image(const std::filesystem::path& path, const IndexedImage& img,
                        std::optional<ImageFormat> format = std::nullopt) {
  write_file(path, encode(img, format ? *format : format_from_path(path)));
}

}  // namespace palstego::codecs
