#pragma once

#include <stdexcept>
#include <string>

namespace bga {

/// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A configured enumeration budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The applicability condition n^(1/D) >= 8 rho sqrt(gamma_D) does not hold.
class NotApplicable : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Cleaning was requested on a region that hosts a nontrivial logical operator.
class CleaningPreconditionViolated : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A checked invariant failed. Never expected; the CLI maps this to exit code 3.
class ConsistencyFault : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace bga
