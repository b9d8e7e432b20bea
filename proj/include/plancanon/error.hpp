#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plancanon {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. `offset` is the byte offset of the offending
// character inside the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        raw_(what),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
  std::size_t offset_;
};

// Structurally invalid graph or record (self-loops, duplicate edges, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input graph is not planar. The witness is a best-effort edge set of a
// Kuratowski subdivision; it may be empty for large inputs.
class NotPlanarError : public Error {
 public:
  explicit NotPlanarError(std::vector<std::pair<int, int>> witness = {})
      : Error("graph is not planar"), witness_(std::move(witness)) {}
  NotPlanarError(const std::string& what, std::vector<std::pair<int, int>> witness)
      : Error(what), witness_(std::move(witness)) {}

  const std::vector<std::pair<int, int>>& witness() const { return witness_; }

 private:
  std::vector<std::pair<int, int>> witness_;
};

// A precondition on an argument was violated (wrong sizes, bad spec, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Indicates a bug, never bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace plancanon
