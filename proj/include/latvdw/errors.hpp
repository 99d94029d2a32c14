#pragma once

#include <stdexcept>
#include <string>

namespace latvdw {

/// Argument outside the mathematical domain of a function (u <= 0, q = 0, coincident points).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Invalid physical parameters or malformed input data.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A quadrature, root search or finite-difference scheme failed to converge.
/// what() carries the diagnostics.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace latvdw
