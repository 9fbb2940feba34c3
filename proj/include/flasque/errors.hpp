#pragma once

#include <stdexcept>
#include <string>

namespace flasque {

// Malformed or inconsistent input data (CLI exit code 1).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two independent computations of the same invariant disagree, or an audited
// postcondition fails (CLI exit code 2).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flasque
