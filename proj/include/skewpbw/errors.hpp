#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skewpbw {

/// Base of every error raised by the library. Search routines report
/// "nothing found" through std::optional, never through exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

class KindMismatch : public Error {
 public:
  using Error::Error;
};

class InfiniteRing : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

class UnknownAlgebra : public Error {
 public:
  using Error::Error;
};

class MissingDimR : public Error {
 public:
  using Error::Error;
};

class SemanticError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedCoefficientRing : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Syntax error with a 1-based position. `line` is 0 for single-line input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    std::string where = line > 0 ? "line " + std::to_string(line) + ", column " : "column ";
    return where + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace skewpbw
