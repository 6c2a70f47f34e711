#pragma once

#include <stdexcept>
#include <string>

namespace rcloop {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an argument that violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An index, edge or annulus lies outside the supported geometry.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// Requested state space or family exceeds a configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// An internal guarantee failed; indicates a bug or a counterexample.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace rcloop
