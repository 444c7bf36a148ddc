#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eulersum {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed index, atom or combination text. `position()` is a 0-based
/// character offset into the parsed input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The requested Euler sum or MZV does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// An expansion engine was asked to work outside its hypotheses
/// (e.g. an inner exponent 1 for the tail-sum engine).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial or exact-arithmetic size guard was exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A numeric tolerance could not be certified within the summation cap.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, double achieved_bound)
      : Error(what), achieved_bound_(achieved_bound) {}

  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

/// Identity table could not be read.
class TableError : public Error {
 public:
  using Error::Error;
};

}  // namespace eulersum
