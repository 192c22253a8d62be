#pragma once

#include <stdexcept>
#include <string>

namespace spinbath {

// Bad input: invalid model/config fields, violated preconditions, size caps.
// The CLI maps these to exit code 2.
class validation_error : public std::runtime_error {
 public:
  validation_error(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Numerical failure inside an engine (non-convergence, solver breakdown).
// The CLI maps these to exit code 1.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of its subdivision budget; carries the best
// value reached and the error estimate at the point of failure.
class quadrature_error : public numeric_error {
 public:
  quadrature_error(const std::string& what, double partial, double estimate)
      : numeric_error(what), partial_value_(partial), error_estimate_(estimate) {}
  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_value_;
  double error_estimate_;
};

}  // namespace spinbath
