#pragma once

#include <stdexcept>
#include <string>

namespace frachjb {

/// Invalid configuration or violated precondition supplied by the caller.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that started from valid input but could not finish
/// (blow-up, non-finite values, a priori bound exceeded).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frachjb
