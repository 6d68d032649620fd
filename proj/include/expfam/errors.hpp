#pragma once

#include <stdexcept>
#include <string>

namespace expfam {

/// A series or quadrature did not meet its tolerance within the iteration cap.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented invariant of a parameter set does not hold.
class InvariantViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace expfam
