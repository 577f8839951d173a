#pragma once

#include <stdexcept>
#include <string>

namespace ctopo {

// Malformed input: recipe JSON, job specs, complex files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction precondition failed (bad parameter, guard exceeded, action
// not an automorphism, ...).
class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured budget (simplex cap, step count) was hit before completion.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked mathematical invariant does not hold: non-associative table,
// ∂∘∂ ≠ 0, non-integral Φ, and so on.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ctopo
