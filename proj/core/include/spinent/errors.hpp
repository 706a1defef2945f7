#pragma once

#include <stdexcept>
#include <string>

namespace spinent {

// Argument outside the mathematical domain of an operation (S = 0, n out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The coefficient set describes the zero vector.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed form was asked for a set outside the two-level device subspace.
class ModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A density matrix or tensor violated its structural invariants.
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace spinent
