#pragma once

#include <stdexcept>
#include <string>

namespace bmv {

/// Invalid parameter, argument outside its domain, or malformed input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Block size below the feasibility threshold of a scaling plan.
class FeasibilityError : public DomainError {
 public:
  FeasibilityError(const std::string& what, long long n_star)
      : DomainError(what), n_star_(n_star) {}
  long long n_star() const noexcept { return n_star_; }

 private:
  long long n_star_;
};

/// Iterative method (quadrature, root bracket) failed to reach tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double estimate = 0.0)
      : std::runtime_error(what), estimate_(estimate) {}
  /// Best error estimate achieved before giving up.
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace bmv
