#pragma once

#include <vector>

#include "bwave/rational.hpp"

namespace bwave {

/// Exact Taylor coefficient b_k of phi_n(r) = sum_k b_k r^(2k), where
/// 1/b_k = prod_{j=1..k} (-2j)(n-2+2j). b_0 = 1.
Rational series_coefficient(int n, int k);

/// phi_n: the solution of f'' + (n-1) f'/r + f = 0 with f(0) = 1, f'(0) = 0.
///
/// Small arguments are summed from the exact series with coefficients
/// converted to double once. Larger arguments use the closed form
/// Gamma(n/2) (2/r)^(n/2-1) J_{n/2-1}(r), where the alternating series
/// would cancel catastrophically. phi_1 = cos and phi_3 = sinc are special
/// cased. Instances are immutable and safe to share between threads.
class BesselProfile {
 public:
  explicit BesselProfile(int n, double relative_target = 1e-15);

  int dimension() const { return n_; }
  double relative_target() const { return relative_target_; }

  double value(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
  double psi(double r) const { return r * value(r); }

  /// Whether value(r) is taken from the power series.
  bool uses_series(double r) const;

  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  double series(double r, int order) const;
  double closed_form(double r) const;

  int n_;
  double relative_target_;
  std::vector<double> coefficients_;
};

/// Shared, lazily built profile for dimension n. Thread safe.
const BesselProfile& bessel_profile(int n);

double phi(int n, double r);
double psi(int n, double r);
double phi_derivative(int n, double r);
double phi_second_derivative(int n, double r);

/// phi_n'' + (n-1) phi_n'/r + phi_n at r > 0.
double ode_residual(int n, double r);

}  // namespace bwave
