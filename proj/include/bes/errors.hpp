#pragma once

#include <stdexcept>
#include <string>

namespace bes {

// Thrown when an operation would exceed its configured exhaustive-search bound.
struct SizeLimitError : std::runtime_error {
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error with byte position and the token set that would have been accepted.
struct ParseError : std::runtime_error {
  size_t position;
  std::string expected;
  ParseError(const std::string& msg, size_t pos, std::string exp)
      : std::runtime_error(msg), position(pos), expected(std::move(exp)) {}
};

}  // namespace bes
