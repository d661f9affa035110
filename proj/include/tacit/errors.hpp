#pragma once

#include <stdexcept>
#include <string>

namespace tacit {

/// Syntax error with position and an expected-token description.
/// Parsing stops at the first error.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, int line, int col, std::string message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + message),
        file_(std::move(file)),
        line_(line),
        col_(col),
        message_(std::move(message)) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& message() const { return message_; }

 private:
  std::string file_;
  int line_;
  int col_;
  std::string message_;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed content in a dictionary or checklist file.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string file, int line, std::string message)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

/// The static control x valuation bound exceeds the configuration limit,
/// so exploration is refused up front.
class ProductTooLarge : public std::runtime_error {
 public:
  ProductTooLarge(uint64_t bound, uint64_t limit)
      : std::runtime_error("product space bound " +
                           (bound == UINT64_MAX ? std::string("overflows")
                                                : std::to_string(bound)) +
                           " exceeds limit " + std::to_string(limit)),
        bound_(bound),
        limit_(limit) {}

  uint64_t bound() const { return bound_; }
  uint64_t limit() const { return limit_; }

 private:
  uint64_t bound_;
  uint64_t limit_;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tacit
