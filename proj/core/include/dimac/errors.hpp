#pragma once

#include <stdexcept>
#include <string>

namespace dimac {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: out-of-range symbols, non-stochastic rows,
/// alphabet mismatches, bad channel specs.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A dense table would exceed the configured cell budget.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but the mathematical object does not exist
/// (e.g. no unique stationary distribution).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace dimac
