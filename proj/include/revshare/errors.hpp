#ifndef REVSHARE_ERRORS_HPP
#define REVSHARE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace revshare {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector arguments whose lengths do not line up.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A forced effort (e.g. the regulated public ISP's) leaves the private ISP
/// with negative effort.
class InfeasibleEffort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The parameters fall in the zero-effort regime and the caller asked for an
/// operation that is only defined outside it.
class DegenerateRegime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No split gives both bargainers at least their disagreement utility.
class InfeasibleBargain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace revshare

#endif  // REVSHARE_ERRORS_HPP
