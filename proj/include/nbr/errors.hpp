#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nbr {

// Malformed or out-of-range input to a library operation.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Game text that fails to parse. Carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : InputError("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A well-formed request for a combination the engine does not provide,
// e.g. a fast variant of the target-referenced relation.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nbr
