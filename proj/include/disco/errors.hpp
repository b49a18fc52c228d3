#pragma once

#include <stdexcept>
#include <string>

namespace disco {

/// Invalid ensemble/plan configuration (divisibility, caps, parameter ranges).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands whose dimensions do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerically unusable input (non-finite entries, empty samples, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace disco
