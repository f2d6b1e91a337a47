#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bwave/besselfn.hpp"

using namespace bwave;
using Catch::Matchers::WithinAbs;
using mp = boost::multiprecision::cpp_bin_float_50;

namespace {

// Ascending series of Gamma(n/2) (2/r)^(n/2-1) J_{n/2-1}(r) in 50 digits.
double phi_oracle(int n, double r) {
  const mp x = mp(r) * r / 4;
  const mp nu1 = mp(n) / 2;
  mp term = 1, sum = 1;
  for (int k = 1; k < 500; ++k) {
    term *= -x / (mp(k) * (k - 1 + nu1));
    sum += term;
    if (abs(term) < mp("1e-40") * (1 + abs(sum))) break;
  }
  return sum.convert_to<double>();
}

// Central difference of phi_n with step h.
double fd(int n, double r, double h) { return (phi(n, r + h) - phi(n, r - h)) / (2 * h); }

}  // namespace

TEST_CASE("series coefficients match the cos, sinc and J0 series", "[besselfn]") {
  CHECK(series_coefficient(1, 1) == Rational(-1, 2));
  CHECK(series_coefficient(3, 1) == Rational(-1, 6));
  CHECK(series_coefficient(2, 2) == Rational(1, 64));
  for (int n = 1; n <= 12; ++n) CHECK(series_coefficient(n, 0) == 1);
  // cos: (-1)^k / (2k)!
  Rational fact = 1;
  for (int k = 1; k <= 8; ++k) {
    fact *= (2 * k - 1) * (2 * k);
    CHECK(series_coefficient(1, k) == (k % 2 ? Rational(-1) : Rational(1)) / fact);
  }
}

TEST_CASE("phi matches closed forms", "[besselfn]") {
  CHECK_THAT(phi(1, M_PI), WithinAbs(-1.0, 1e-15));
  CHECK_THAT(phi(3, M_PI), WithinAbs(0.0, 1e-15));
  CHECK_THAT(phi(5, 2.0), WithinAbs(3 * (std::sin(2.0) - 2 * std::cos(2.0)) / 8, 1e-14));
  CHECK_THAT(phi(2, 1.0), WithinAbs(phi_oracle(2, 1.0), 1e-14));
  CHECK_THAT(phi(2, 1.0), WithinAbs(0.7651976865579666, 1e-15));
  CHECK(phi(7, 0.0) == 1.0);
}

TEST_CASE("psi matches closed forms", "[besselfn]") {
  for (double x : {0.1, 0.7, 2.0, 5.5, 17.0, 29.9}) CHECK_THAT(psi(3, x), WithinAbs(std::sin(x), 1e-14));
  for (int q = 1; q <= 6; ++q) CHECK(psi(q + 2, 0.0) == 0.0);
  CHECK_THAT(psi(4, 2.0), WithinAbs(2 * std::cyl_bessel_j(1.0, 2.0), 1e-14));
  CHECK_THAT(psi(4, 2.0), WithinAbs(2 * phi_oracle(4, 2.0), 1e-14));
}

TEST_CASE("phi derivative", "[besselfn]") {
  for (double r : {0.3, 1.0, 4.5, 12.0}) CHECK_THAT(phi_derivative(1, r), WithinAbs(-std::sin(r), 1e-14));
  CHECK(phi_derivative(3, 0.0) == 0.0);
  CHECK_THAT(phi_derivative(7, 1.3), WithinAbs(fd(7, 1.3, 1e-5), 1e-8));
  for (int n : {2, 4, 9})
    for (double r : {0.5, 3.9, 4.1, 15.0}) CHECK_THAT(phi_derivative(n, r), WithinAbs(fd(n, r, 1e-5), 1e-8));
}

TEST_CASE("ODE residual", "[besselfn]") {
  CHECK(std::abs(ode_residual(1, 2.0)) < 1e-12);
  CHECK(std::abs(ode_residual(4, 5.0)) < 1e-9);
  CHECK(std::abs(ode_residual(9, 25.0)) < 1e-8);
}

TEST_CASE("phi agrees with the independent ascending series", "[besselfn][oracle]") {
  for (int n = 1; n <= 12; ++n)
    for (int i = 1; i <= 60; ++i) {
      const double r = 0.5 * i;
      INFO("n=" << n << " r=" << r);
      CHECK_THAT(phi(n, r), WithinAbs(phi_oracle(n, r), 1e-12));
    }
}

TEST_CASE("hypergeometric consistency on (0, 10]", "[besselfn][property]") {
  for (int q = 2; q <= 5; ++q)
    for (int i = 1; i <= 100; ++i) {
      const double r = 0.1 * i;
      const double closed = std::tgamma(q / 2.0) * std::pow(r / 2, 1 - q / 2.0) * std::cyl_bessel_j(q / 2.0 - 1, r);
      CHECK_THAT(phi(q, r), WithinAbs(phi_oracle(q, r), 1e-10));
      CHECK_THAT(closed, WithinAbs(phi_oracle(q, r), 1e-10));
    }
}

TEST_CASE("recursion lemma (phi_{q+2} r^q)' = q phi_q r^(q-1)", "[besselfn][property]") {
  for (int q = 1; q <= 8; ++q)
    for (int i = 1; i <= 200; ++i) {
      const double r = 0.1 * i;
      // Both sides divided by r^(q-1) so the check is relative to a bounded quantity.
      const double lhs = r * phi_derivative(q + 2, r) + q * phi(q + 2, r);
      CHECK(std::abs(lhs - q * phi(q, r)) < 1e-8);
    }
}

TEST_CASE("psi decays like r^((1-q)/2)", "[besselfn][property]") {
  for (int q = 1; q <= 6; ++q) {
    auto sup = [&](double a, double b) {
      double s = 0.0;
      for (double r = a; r <= b; r += 0.01) s = std::max(s, std::abs(psi(q + 2, r)) * std::pow(r, (q - 1) / 2.0));
      return s;
    };
    const double early = sup(10.0, 100.0), late = sup(100.0, 200.0);
    INFO("q=" << q << " early=" << early << " late=" << late);
    CHECK(late / early > 0.8);
    CHECK(late / early < 1.2);
  }
}

TEST_CASE("psi is bounded on [0, 500]", "[besselfn][property]") {
  for (int q = 1; q <= 8; ++q) {
    double m = 0.0;
    for (double r = 0.0; r <= 500.0; r += 0.05) m = std::max(m, std::abs(psi(q + 2, r)));
    CHECK(std::isfinite(m));
    CHECK(m < 3.0);
  }
}

TEST_CASE("profiles are thread-safe shared instances", "[besselfn]") {
  CHECK(&bessel_profile(5) == &bessel_profile(5));
  CHECK(bessel_profile(5).dimension() == 5);
  CHECK(bessel_profile(5).uses_series(1.0));
  CHECK_FALSE(bessel_profile(5).uses_series(20.0));
}

TEST_CASE("invalid dimension is rejected", "[besselfn]") {
  CHECK_THROWS_AS(phi(0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ode_residual(3, 0.0), std::domain_error);
}
