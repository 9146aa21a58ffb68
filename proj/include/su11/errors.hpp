#pragma once

#include <stdexcept>

namespace su11 {

// Input validation failures are reported as std::invalid_argument.

/// Parameters outside the region where a formula is defined: tilting above
/// threshold (f <= 2|g|, omega <= chi), |zeta| >= 1, singular sigma.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The truncated window is too small to hold a state to the requested
/// tolerance.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace su11
