#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

/// Adaptive integration (or a table build driven by it) could not reach the
/// requested tolerance within its panel budget.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  /// Best error estimate at the point of failure.
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Configuration file or flag rejected (unknown key, bad value, missing file).
class config_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qbm
