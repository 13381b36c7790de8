#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bpt {

// Malformed mesh input (OBJ syntax, bad indices, empty mesh).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Geometry that cannot be processed (zero extent, out-of-range coordinates,
// empty mesh after canonicalization).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent tokenizer parameters or container header.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Token stream that cannot be decoded.
class MalformedSequence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bpt
