#pragma once

#include <stdexcept>
#include <string>

namespace heckebench {

/// Argument outside the mathematical domain of an operation (c = 0, odd weight, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A truncation or configuration parameter is too small or out of range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not reach its requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A required upstream value (eigenforms, L-values) is missing.
class DependencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heckebench
