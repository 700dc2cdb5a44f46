#pragma once

#include <stdexcept>
#include <string>

namespace gbsolve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN or Inf found in data handed to a transform.
class InputCorruptionError : public Error {
 public:
  using Error::Error;
};

/// Spectral data is not Hermitian enough to produce a real grid function.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Operands live on different grids.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter is outside its admissible domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent run setup (e.g. T not a multiple of dt).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Least-squares order fit has fewer than two usable points.
class FitUndefinedError : public Error {
 public:
  using Error::Error;
};

/// A time step produced non-finite values.
class BlowUpError : public Error {
 public:
  BlowUpError(long step_index, const std::string& what)
      : Error(what), step_index_(step_index) {}

  long step_index() const noexcept { return step_index_; }

 private:
  long step_index_;
};

}  // namespace gbsolve
