#pragma once

#include <stdexcept>
#include <string>

namespace graphflow {

/// Request exceeds a hard resource guard (e.g. mesh refinement level).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative linear solver did not reach its tolerance within the cap.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, long iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

/// Nonlinear fixed-point iteration did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_increment)
      : std::runtime_error(what), last_increment_(last_increment) {}
  double last_increment() const noexcept { return last_increment_; }

 private:
  double last_increment_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphflow

namespace graphflow {

/// A time step failed; carries the time level at which it happened.
class SchemeError : public std::runtime_error {
 public:
  SchemeError(const std::string& what, int time_level)
      : std::runtime_error(what), time_level_(time_level) {}
  int time_level() const noexcept { return time_level_; }

 private:
  int time_level_;
};

}  // namespace graphflow
