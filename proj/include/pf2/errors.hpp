#pragma once

#include <stdexcept>
#include <string>

namespace pf2 {

// Caller passed arguments that do not fit the operation (wrong field,
// wrong tower degree, malformed input).
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematically undefined request: inverting zero, inadmissible family
// parameter, inverse of a non-permutation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An exhaustive sweep would exceed its configured work budget.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant that the mathematics guarantees was violated. Always a bug.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pf2
