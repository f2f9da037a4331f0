#pragma once

#include <stdexcept>
#include <string>

namespace fockgdo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed input or dimension mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The analytic tail of a state (or an operator image) does not fit the truncation.
class TruncationError : public InputError {
 public:
  using InputError::InputError;
};

/// A diagonal function evaluated to a non-finite value where it matters,
/// or a quantity that must be non-negative came out negative.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fockgdo
