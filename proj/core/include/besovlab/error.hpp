#pragma once

#include <stdexcept>
#include <string>

namespace besovlab {

// Argument outside the mathematical domain of an operation (negative x, u >= 1, s >= r, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Operation only defined for one tail class (e.g. the Gumbel auxiliary function on a Cauchy slab).
struct UnsupportedTailError : std::domain_error {
  using std::domain_error::domain_error;
};

// Caller broke a stated precondition of an experiment (infinite moment, wrong regime, ...).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace besovlab
