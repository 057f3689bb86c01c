#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument or spec does not hold (zero sizes, d > n,
/// non-finite data, kappa < 3, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A metric is undefined for the given input, e.g. a zero within-class
/// scatter in the separability ratio.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. line() is 1-based; 0 means "whole input".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ssse
