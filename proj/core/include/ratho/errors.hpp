#pragma once

#include <stdexcept>
#include <string>

namespace ratho {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different generator sets, or a value violates a type invariant.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. exactness of a non-closed element).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A degree slice is infinite: degree-0 generators without a polynomial bound.
class UnboundedSliceError : public Error {
 public:
  using Error::Error;
};

/// A configured generator or slice cap was exceeded.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// Requested a decision procedure that only exists as a verifier.
class VerificationOnlyError : public Error {
 public:
  using Error::Error;
};

}  // namespace ratho
