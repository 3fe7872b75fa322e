#pragma once

#include <stdexcept>
#include <string>

namespace dirsim {

// Invalid scenario, schedule, sweep or pilot configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a model (e.g. d < d_min).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a precondition (dimension mismatch, out-of-range index).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Stacked channel matrix is rank deficient.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double condition_number)
      : std::runtime_error(what), condition_number_(condition_number) {}
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

// Denominator matrix of a generalized eigenproblem is numerically singular.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure inside one Monte Carlo trial; carries the trial index.
class TrialError : public std::runtime_error {
 public:
  TrialError(unsigned long long trial, const std::string& what)
      : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}
  unsigned long long trial() const noexcept { return trial_; }

 private:
  unsigned long long trial_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dirsim
