#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace darboux {

/// Base class for every error raised by the library. The CLI maps these to
/// exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A polynomial-only operation met an elementary function of a variable.
class NonPolynomialError : public Error {
 public:
  using Error::Error;
};

/// Division by an exactly-zero quantity (symbolic) or by a numeric pole.
class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Shapes, charts or dimensions that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A numeric integrator produced NaN/Inf.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, std::size_t step)
      : Error(what + " at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A link diagram that is not a valid planar diagram, or a local move whose
/// pattern is not present at the requested site.
class DiagramError : public Error {
 public:
  using Error::Error;
};

/// Input larger than a documented computational budget.
class ComplexityError : public Error {
 public:
  using Error::Error;
};

}  // namespace darboux
