#pragma once

#include <stdexcept>
#include <string>

namespace diffest {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation requested outside a function's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid or missing configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure (quadrature, iteration) failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Array shapes or grids do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A diagnostic was requested but the required data was never recorded.
class MissingDataError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse to resolve the kernel scale.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Time step cannot satisfy the stability constraint.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// Density developed more negative mass than the clipping tolerance allows.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// A particle left the solved domain. Carries the offending time and index.
class DomainEscapeError : public Error {
 public:
  DomainEscapeError(const std::string& what, double time, std::size_t particle)
      : Error(what), time_(time), particle_(particle) {}

  double time() const { return time_; }
  std::size_t particle() const { return particle_; }

 private:
  double time_;
  std::size_t particle_;
};

/// Experiment plan exceeds its budget or is otherwise unrunnable.
class PlanError : public Error {
 public:
  using Error::Error;
};

/// Artifact set is inconsistent with the requested aggregation.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace diffest
