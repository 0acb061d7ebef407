#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace palstego {

// Base of every error raised by the library. Each concrete error names one
// failure mode; callers that only care about the category catch the
// intermediate classes (CodecError, StegoError).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// factoradic / lehmer
class OverflowError : public Error {
 public:
  using Error::Error;
};
class DigitRangeError : public Error {
 public:
  using Error::Error;
};
class InvalidPermutationError : public Error {
 public:
  using Error::Error;
};
class InversionRangeError : public Error {
 public:
  using Error::Error;
};

// palette_image
class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};
class TooManyColorsError : public Error {
 public:
  using Error::Error;
};
class DegreeMismatchError : public Error {
 public:
  using Error::Error;
};
class PaletteSizeError : public Error {
 public:
  using Error::Error;
};
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// stego
class StegoError : public Error {
 public:
  using Error::Error;
};
class CapacityExceededError : public StegoError {
 public:
  using StegoError::StegoError;
};
class DuplicateColorError : public StegoError {
 public:
  using StegoError::StegoError;
};
class PaletteMismatchError : public StegoError {
 public:
  using StegoError::StegoError;
};
class FramingError : public StegoError {
 public:
  using StegoError::StegoError;
};
class LengthError : public StegoError {
 public:
  using StegoError::StegoError;
};

// otp
class EntropyUnavailableError : public Error {
 public:
  using Error::Error;
};
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};
class KeyFileError : public Error {
 public:
  using Error::Error;
};

// codecs
class CodecError : public Error {
 public:
  using Error::Error;
};
class SignatureError : public CodecError {
 public:
  using CodecError::CodecError;
};
class UnsupportedColorTypeError : public CodecError {
 public:
  using CodecError::CodecError;
};
class ChecksumError : public CodecError {
 public:
  using CodecError::CodecError;
};
class HeaderError : public CodecError {
 public:
  using CodecError::CodecError;
};
class LzwError : public CodecError {
 public:
  using CodecError::CodecError;
};
class LocalColorTableUnsupportedError : public CodecError {
 public:
  using CodecError::CodecError;
};
// Structurally valid container with content this codec does not handle
// (interlaced PNG, multi-frame GIF, truncated data, ...).
class FormatError : public CodecError {
 public:
  using CodecError::CodecError;
};

class ParseError : public CodecError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : CodecError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace palstego
