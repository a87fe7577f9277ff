#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subsystem or matrix dimension is invalid or inconsistent.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (negative rate,
/// gamma outside [0,1], non-Hermitian input to a Hermitian routine, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A result that should be real up to rounding carried a significant
/// imaginary part.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A physical invariant (density-matrix validity, Kraus completeness) failed.
/// `magnitude` is the largest violation found.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double magnitude)
      : Error(what), magnitude_(magnitude) {}
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

/// An ExperimentConfig field is invalid; `field()` names it.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace qcorr
