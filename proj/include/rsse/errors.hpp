#pragma once

#include <stdexcept>
#include <string>

namespace rsse {

/// Invalid input: out-of-range physical parameters, bad labels, singular setups.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A supplied eigenvalue bracket does not enclose a state.
class BracketError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A converged state does not have the requested number of nodes.
class WrongStateError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

}  // namespace rsse
