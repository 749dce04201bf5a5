#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace senticl {

/// Anything wrong with input data or resources: unreadable files, malformed
/// formats, out-of-range values. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input at a known position. `line` is 1-based; 0 means unknown.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError(line > 0 ? what + " at line " + std::to_string(line) : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace senticl
