#pragma once

#include <stdexcept>
#include <string>

namespace jdx {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter outside the admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Value requested outside the range of a monotone map.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Quadrature, root-finding or derivative failure.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Model file or expression could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace jdx
