#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace afembed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph, term, or spec document. Line and column are 1-based;
/// zero means the position is not known (e.g. structured input).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Structural problem with a graph: duplicate ids, undeclared endpoints,
/// lookups of unknown vertices or edges.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A term refers to generators that do not exist in the algebra it is
/// evaluated against.
class ContextError : public Error {
 public:
  using Error::Error;
};

}  // namespace afembed
