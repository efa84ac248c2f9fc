#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frobrel {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched objects or dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An operation was called on data that violates its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Bad user input: missing files, unknown names, ambiguous selections.
class InputError : public Error {
 public:
  using Error::Error;
};

// Ill-typed diagram term.
class TypeError : public Error {
 public:
  using Error::Error;
};

// Parse failure with a source position (1-based).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

}  // namespace frobrel
