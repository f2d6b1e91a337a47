#pragma once

#include <stdexcept>
#include <string>

namespace bwave {

/// A numerical precondition failed. Carries the quantity that was measured
/// so callers can report how far off the input was.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, double measured)
      : std::runtime_error(what), measured_(measured) {}

  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

/// The kernel cluster of a spectrum is not separated from the rest.
class SpectralGapError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A requested discretization exceeds the configured dimension cap.
class SizeError : public std::length_error {
 public:
  SizeError(const std::string& what, long long dimension)
      : std::length_error(what), dimension_(dimension) {}

  long long dimension() const noexcept { return dimension_; }

 private:
  long long dimension_;
};

/// A geodesic left the valid parameter rectangle of its chart.
class ChartExitError : public std::runtime_error {
 public:
  ChartExitError(const std::string& what, double exit_time)
      : std::runtime_error(what), exit_time_(exit_time) {}

  double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

}  // namespace bwave
