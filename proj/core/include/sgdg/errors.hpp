#ifndef SGDG_ERRORS_HPP_
#define SGDG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sgdg {

/// Invalid user input: bad configuration key, out-of-range parameter.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The time march cannot continue: NaN/Inf in the state or an inadmissible
/// physical state (negative density or pressure) at an evaluation point.
class SolverAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when sub-cell averaging is not injective on the polynomial space,
/// i.e. the average-preserving polynomial projection is ill-posed.
class NonInjectiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sgdg

#endif  // SGDG_ERRORS_HPP_
