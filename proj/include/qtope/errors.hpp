#pragma once

#include <stdexcept>

namespace qtope {

// Input violating a documented precondition: malformed permutations or
// fences, non-downset diagrams, pattern sets that are not well-behaved.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request outside the computational contract (n too large for the
// operation's enumeration budget).
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal self-check failed. Indicates a bug in this library, not a
// user error.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation requires an essential congruence.
class NotEssentialError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

// Rail operations are undefined when f(n-1,n,{}) is contracted: every rail
// collapses into a single class.
class RailCollapseError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

class NotWellBehavedError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

}  // namespace qtope
