#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace augsill {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument or parameter outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A point violates a convergence theorem's hypothesis (y_i == mu_i).
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Vector/matrix dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration, arguments, or pool.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamilyError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Non-finite or otherwise unusable data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: divergence, quadrature, training.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class IntegrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TrainingError : public NumericalError {
 public:
  TrainingError(const std::string& what, int last_finite_epoch)
      : NumericalError(what), last_finite_epoch_(last_finite_epoch) {}
  /// -1 when no epoch produced a finite loss.
  int last_finite_epoch() const noexcept { return last_finite_epoch_; }

 private:
  int last_finite_epoch_;
};

}  // namespace augsill
