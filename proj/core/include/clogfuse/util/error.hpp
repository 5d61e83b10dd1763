#pragma once

#include <stdexcept>
#include <string>

namespace clogfuse {

/// Invalid user-supplied configuration: bounds, schedules, grids, query
/// parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite values, singular systems, rank deficiency.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating observation data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clogfuse
