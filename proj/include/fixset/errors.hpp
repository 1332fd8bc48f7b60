#pragma once

#include <stdexcept>
#include <string>

namespace fixset {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap would be exceeded (enumeration limit, tuple
// budget, exhaustive-action point cap). Callers may raise the cap and retry.
class CapError : public Error {
 public:
  using Error::Error;
};

// Arguments lie outside a function's mathematical domain (bad sizes,
// divisibility violations, out-of-range parameters).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Structurally inconsistent argument combination, e.g. a cycle type whose
// total degree differs from the query's n.
class MismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace fixset
