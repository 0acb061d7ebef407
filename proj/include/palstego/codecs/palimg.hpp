#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "palstego/codecs/codec_image.hpp"
#include "palstego/errors.hpp"
#include "palstego/palette_image.hpp"

// PALIMG, a line-oriented text form of an indexed image:
//
//   PALIMG 1
//   <width> <height> <palette_len>
//   <r> <g> <b>                     (palette_len lines)
//   <i> <i> ... <i>                 (height lines of width indices)
//
// Fields are separated by spaces or tabs; every line ends with '\n'.
namespace palstego::codecs::palimg {

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

inline std::vector<Line> split_lines(std::string_view text) {
  if (text.empty() || text.back() != '\n') {
    std::size_t lines = 1;
    for (char c : text) lines += c == '\n';
    throw ParseError(lines, 1, "missing trailing newline");
  }
  std::vector<Line> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view raw = text.substr(start, end - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{lines.size() + 1, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t') {
        ++i;
        continue;
      }
      const std::size_t tok_start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
      line.tokens.push_back({raw.substr(tok_start, i - tok_start), tok_start + 1});
    }
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

inline std::size_t parse_uint(const Line& line, const Token& tok, std::size_t max_value,
                              const char* what) {
  std::size_t v = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line.number, tok.column,
                     std::string(what) + " '" + std::string(tok.text) + "' is not a non-negative integer");
  }
  if (v > max_value) {
    throw ParseError(line.number, tok.column,
                     std::string(what) + " " + std::to_string(v) + " exceeds " +
                         std::to_string(max_value));
  }
  return v;
}

inline const Line& expect_line(const std::vector<Line>& lines, std::size_t index,
                               std::size_t fields, const char* what) {
  if (index >= lines.size()) throw ParseError(index + 1, 1, std::string("missing ") + what);
  const Line& line = lines[index];
  if (line.tokens.size() != fields) {
    const std::size_t col = line.tokens.size() > fields ? line.tokens[fields].column : 1;
    throw ParseError(line.number, col,
                     std::string(what) + " needs " + std::to_string(fields) + " fields, found " +
                         std::to_string(line.tokens.size()));
  }
  return line;
}

}  // namespace detail

inline CodecImage read_palimg(std::string_view text) {
  const auto lines = detail::split_lines(text);

  const auto& magic = detail::expect_line(lines, 0, 2, "header");
  if (magic.tokens[0].text != "PALIMG") {
    throw ParseError(1, magic.tokens[0].column, "expected 'PALIMG'");
  }
  if (magic.tokens[1].text != "1") {
    throw ParseError(1, magic.tokens[1].column, "unsupported PALIMG version '" +
                                                    std::string(magic.tokens[1].text) + "'");
  }

  const auto& dims = detail::expect_line(lines, 1, 3, "dimension line");
  const std::size_t width = detail::parse_uint(dims, dims.tokens[0], 1U << 24, "width");
  const std::size_t height = detail::parse_uint(dims, dims.tokens[1], 1U << 24, "height");
  const std::size_t palette_len =
      detail::parse_uint(dims, dims.tokens[2], kMaxPaletteSize, "palette length");
  if (width == 0) throw ParseError(2, dims.tokens[0].column, "width must be positive");
  if (height == 0) throw ParseError(2, dims.tokens[1].column, "height must be positive");
  if (palette_len == 0) throw ParseError(2, dims.tokens[2].column, "palette length must be positive");
  if (width * height > codecs::detail::kMaxPixels) throw ParseError(2, 1, "image too large");

  CodecImage out;
  out.format = ImageFormat::Palimg;
  out.image.width = width;
  out.image.height = height;
  for (std::size_t i = 0; i < palette_len; ++i) {
    const auto& line = detail::expect_line(lines, 2 + i, 3, "palette line");
    out.image.palette.push_back(
        {static_cast<std::uint8_t>(detail::parse_uint(line, line.tokens[0], 255, "red")),
         static_cast<std::uint8_t>(detail::parse_uint(line, line.tokens[1], 255, "green")),
         static_cast<std::uint8_t>(detail::parse_uint(line, line.tokens[2], 255, "blue"))});
  }
  out.image.indices.reserve(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    const auto& line = detail::expect_line(lines, 2 + palette_len + y, width, "pixel row");
    for (const auto& tok : line.tokens) {
      out.image.indices.push_back(
          static_cast<std::uint8_t>(detail::parse_uint(line, tok, palette_len - 1, "index")));
    }
  }
  const std::size_t used = 2 + palette_len + height;
  if (lines.size() > used) throw ParseError(used + 1, 1, "unexpected content after the last row");
  return out;
}

inline std::string write_palimg(const IndexedImage& img) {
  img.validate();
  std::string out = "PALIMG 1\n";
  out += std::to_string(img.width) + ' ' + std::to_string(img.height) + ' ' +
         std::to_string(img.palette.size()) + '\n';
  for (const Rgb& c : img.palette) {
    out += std::to_string(c.r) + ' ' + std::to_string(c.g) + ' ' + std::to_string(c.b) + '\n';
  }
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      if (x) out += ' ';
      out += std::to_string(img.indices[y * img.width + x]);
    }
    out += '\n';
  }
  return out;
}

inline std::string write_palimg(const CodecImage& img) { return write_palimg(img.image); }

}  // namespace palstego::codecs::palimg
