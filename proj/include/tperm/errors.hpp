#pragma once

#include <stdexcept>
#include <string>

namespace tperm {

// Malformed input: bad cells, duplicate members, family not t-intersecting
// when the operation requires it, and so on.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments fall outside the range where a bound or lemma is stated.
// Kept distinct from an inequality that was evaluated and failed.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured work budget (nodes, candidate subsets, rounds) ran out.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency re-check failed. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tperm
