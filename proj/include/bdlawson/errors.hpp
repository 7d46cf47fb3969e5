#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "bdlawson/types.hpp"

namespace bdlawson {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: shape mismatch, coincident nodes, bad configuration.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A triangular solve hit a diagonal entry at or below the singularity floor.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& msg, Index index, double magnitude)
      : Error(msg), index_(index), magnitude_(magnitude) {}
  Index index() const { return index_; }
  double magnitude() const { return magnitude_; }

 private:
  Index index_;
  double magnitude_;
};

/// A basis factor is too ill-conditioned to continue on the fast path.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& msg, double condition_estimate)
      : Error(msg), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// The matrix pencil has no finite smallest eigenvalue on range(Bh).
class DegeneratePencilError : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole: the denominator vanished exactly.
class PoleError : public Error {
 public:
  PoleError(const std::string& msg, Complex location, std::ptrdiff_t sample_index = -1)
      : Error(msg), location_(location), sample_index_(sample_index) {}
  Complex location() const { return location_; }
  /// Sample index for pole hits during vectorized evaluation; -1 otherwise.
  std::ptrdiff_t sample_index() const { return sample_index_; }

 private:
  Complex location_;
  std::ptrdiff_t sample_index_;
};

/// A solver precondition does not hold (e.g. too few positive weights).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; message carries the row number.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t row) : Error(msg), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

}  // namespace bdlawson
