#pragma once

#include <stdexcept>
#include <string>

namespace densitylab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: a set spec that breaks its invariants, a bad flag value.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The request exceeds a supported horizon or the 64-bit integer range.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Arguments are well formed but violate an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace densitylab
