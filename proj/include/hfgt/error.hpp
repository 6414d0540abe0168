#pragma once

#include <stdexcept>
#include <string>

namespace hfgt {

/// Malformed or inconsistent user input. CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that is well formed but asks for something we do not support
/// (quadratic objectives, for instance).
class UnsupportedFeature : public InputError {
 public:
  using InputError::InputError;
};

/// Numerical breakdown: singular systems, tiny pivots, failed certification.
/// CLI exit code 4.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hfgt
