#pragma once

#include <stdexcept>
#include <string>

namespace gaussprec {

// Invalid arguments are reported with std::invalid_argument. The types below
// cover the numerical failure modes that callers (and the CLI exit codes)
// need to tell apart.

/// A matrix that must be inverted is singular, or numerically close to it.
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(const std::string& what, double offending_value)
      : std::runtime_error(what), offending_value_(offending_value) {}

  /// The eigenvalue (or symplectic eigenvalue) that triggered the failure.
  double offending_value() const noexcept { return offending_value_; }

 private:
  double offending_value_;
};

/// A computed quantity violates a mathematical identity it must satisfy.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A truncated Fock representation lost too much probability.
class CutoffError : public std::runtime_error {
 public:
  CutoffError(const std::string& what, double achieved_trace)
      : std::runtime_error(what), achieved_trace_(achieved_trace) {}

  double achieved_trace() const noexcept { return achieved_trace_; }

 private:
  double achieved_trace_;
};

/// The master-equation integrator drifted out of its accuracy envelope.
class IntegratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gaussprec
