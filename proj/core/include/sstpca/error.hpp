#pragma once

#include <stdexcept>
#include <string>

namespace sstpca {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tensor or enumeration would exceed its configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Coordinate or linear index outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Operands disagree on ambient dimension or tensor order.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate an operation's preconditions.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A search space is empty, e.g. too few coordinates left outside a forbidden set.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle was asked to run beyond its feasibility guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic was forced on a problem too large to represent.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized data.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace sstpca
