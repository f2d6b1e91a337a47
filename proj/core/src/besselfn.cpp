#include "bwave/besselfn.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace bwave {
namespace {

constexpr int kMaxTerms = 400;
constexpr double kSeriesRadius = 4.0;

void require_dimension(int n) {
  if (n < 1) throw std::domain_error("Bessel profile dimension must be >= 1, got " + std::to_string(n));
}

void require_finite(double r) {
  if (!std::isfinite(r)) throw std::domain_error("Bessel profile argument must be finite");
}

}  // namespace

Rational series_coefficient(int n, int k) {
  require_dimension(n);
  if (k < 0) throw std::domain_error("series index must be >= 0");
  Rational denom = 1;
  for (int j = 1; j <= k; ++j) {
    const long factor = static_cast<long>(-2 * j) * (n - 2 + 2 * j);
    if (factor == 0) throw std::domain_error("zero factor in series coefficient product");
    denom *= factor;
  }
  return Rational(1) / denom;
}

BesselProfile::BesselProfile(int n, double relative_target)
    : n_(n), relative_target_(relative_target) {
  require_dimension(n);
  // Exact running product, converted once per term.
  Rational denom = 1;
  coefficients_.push_back(1.0);
  for (int k = 1; k < kMaxTerms; ++k) {
    denom *= static_cast<long>(-2 * k) * (n - 2 + 2 * k);
    const double b = to_double(Rational(1) / denom);
    if (b == 0.0) break;
    coefficients_.push_back(b);
  }
}

bool BesselProfile::uses_series(double r) const {
  const double a = std::abs(r);
  return a <= kSeriesRadius || a * a < n_;
}

double BesselProfile::series(double r, int order) const {
  const double r2 = r * r;
  double sum = 0.0;
  double power = 1.0;  // r^(2k - order) built incrementally
  const std::size_t terms = coefficients_.size();
  for (std::size_t k = 0; k < terms; ++k) {
    double term = 0.0;
    const double twok = 2.0 * static_cast<double>(k);
    if (order == 0) {
      term = coefficients_[k] * power;
    } else if (order == 1) {
      if (k > 0) term = twok * coefficients_[k] * power / r;
    } else {
      if (k > 0) term = twok * (twok - 1.0) * coefficients_[k] * power / r2;
    }
    sum += term;
    power *= r2;
    if (k > 1 && std::abs(term) <= relative_target_ * std::abs(sum)) break;
  }
  return sum;
}

double BesselProfile::closed_form(double r) const {
  if (n_ == 1) return std::cos(r);
  if (n_ == 3) return std::sin(r) / r;
  const double nu = 0.5 * n_ - 1.0;
  return std::tgamma(0.5 * n_) * std::pow(2.0 / r, nu) * std::cyl_bessel_j(nu, r);
}

double BesselProfile::value(double r) const {
  require_finite(r);
  const double a = std::abs(r);
  return uses_series(a) ? series(a, 0) : closed_form(a);
}

double BesselProfile::derivative(double r) const {
  require_finite(r);
  const double a = std::abs(r);
  if (a == 0.0) return 0.0;
  double d;
  if (uses_series(a) && a > 0.0) {
    // Term-wise: derivative of r^(2k) with the r^(2k) already folded into the
    // running power, divided back by r.
    d = series(a, 1);
  } else {
    d = -a * bessel_profile(n_ + 2).value(a) / n_;
  }
  return r < 0 ? -d : d;
}

double BesselProfile::second_derivative(double r) const {
  require_finite(r);
  const double a = std::abs(r);
  if (a == 0.0) return 2.0 * coefficients_[1];
  if (uses_series(a)) return series(a, 2);
  return -bessel_profile(n_ + 2).value(a) / n_ +
         a * a * bessel_profile(n_ + 4).value(a) / (static_cast<double>(n_) * (n_ + 2));
}

const BesselProfile& bessel_profile(int n) {
  require_dimension(n);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<BesselProfile>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<BesselProfile>(n);
  return *slot;
}

double phi(int n, double r) { return bessel_profile(n).value(r); }
double psi(int n, double r) { return bessel_profile(n).psi(r); }
double phi_derivative(int n, double r) { return bessel_profile(n).derivative(r); }
double phi_second_derivative(int n, double r) { return bessel_profile(n).second_derivative(r); }

double ode_residual(int n, double r) {
  require_finite(r);
  if (r <= 0.0) throw std::domain_error("ODE residual needs r > 0 (singular coefficient at 0)");
  const BesselProfile& p = bessel_profile(n);
  return p.second_derivative(r) + (n - 1) * p.derivative(r) / r + p.value(r);
}

}  // namespace bwave
