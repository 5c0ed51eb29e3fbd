#pragma once

#include <stdexcept>
#include <string>

namespace ptk {

/// Raised when an input violates an operation's contract (bad set, bad
/// parameter, point outside a domain). Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails to reach its tolerance
/// (quadrature cap, singular matrix, LP iteration cap). Exit code 3.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptk
