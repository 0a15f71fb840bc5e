#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cflr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed grammar text, undeclared symbols, unsupported index usage.
class GrammarError : public Error {
 public:
  explicit GrammarError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based source line, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Malformed graph input.
class GraphError : public Error {
 public:
  explicit GraphError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Shape, layout or slot arguments that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A solve exceeded its deadline.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace cflr
