#pragma once

#include <stdexcept>
#include <string>

namespace qhyp {

// Invalid parameters or arguments outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A series or quadrature did not reach its tolerance within the allowed budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters at which a formula has a vanishing denominator.
class DegenerateParameters : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition (e.g. B+ at the lattice boundary).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qhyp
