#pragma once

#include <stdexcept>
#include <string>

namespace flrw {

/// Argument outside the mathematical domain of an operation (t >= T0, theta
/// outside (0,1), sigma outside the case-(3) range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A parameter point does not fall into any of the supported blow-up cases.
class CaseMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Preconditions of the comparison argument (w0 > S, w1 >= cNw0) do not hold.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string clause, const std::string& what)
      : std::invalid_argument(what), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

/// Configuration or input record failed validation.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid too coarse for the requested initial data.
class ResolutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical support escaped the light cone: signals a discretization bug.
class ConeViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stored snapshots do not cover the window an integral needs.
class CoverageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quantity requested in a setting where it carries no meaning.
class MisuseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Blow-up time requested for a run that reached its end time.
class NoBlowupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flrw
