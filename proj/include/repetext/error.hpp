#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace repetext {

// Base for every error raised by the library. The CLI maps UsageError to
// exit code 1 and the input-side errors to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public UsageError {
 public:
  using UsageError::UsageError;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class EncodingError : public InputError {
 public:
  EncodingError(std::size_t byte_offset, const std::string& what)
      : InputError("invalid UTF-8 at byte offset " + std::to_string(byte_offset) + ": " + what),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class EmptyCorpusError : public InputError {
 public:
  EmptyCorpusError() : InputError("empty corpus: no paragraphs after segmentation") {}
};

class FormatError : public InputError {
 public:
  using InputError::InputError;
};

class CollisionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

// Raised by the quadratic reference implementations when the input is too large.
class GuardError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

}  // namespace repetext
