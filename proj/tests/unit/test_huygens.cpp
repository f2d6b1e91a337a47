#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "bwave/besselfn.hpp"
#include "bwave/errors.hpp"
#include "bwave/huygens.hpp"
#include "bwave/tools/verify.hpp"

using namespace bwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MultiPoly x(int q, int i) { return MultiPoly::variable(q, i); }
LaurentPoly t_pow(int p, const Rational& c = 1) { return LaurentPoly::monomial(p, c); }

// Quadrature over S^1 and S^2: trapezoid in the angle (exact for trig
// polynomials), Gauss-Legendre in z on S^2.
double sphere_quadrature(const Exponent& a) {
  const int n = 128;
  if (a.size() == 2) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double th = 2 * M_PI * i / n;
      s += std::pow(std::cos(th), a[0]) * std::pow(std::sin(th), a[1]);
    }
    return s * 2 * M_PI / n;
  }
  auto inner = [&](double z) {
    const double rho = std::sqrt(1 - z * z);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double th = 2 * M_PI * i / n;
      s += std::pow(rho * std::cos(th), a[0]) * std::pow(rho * std::sin(th), a[1]);
    }
    return s * 2 * M_PI / n * std::pow(z, a[2]);
  };
  return boost::math::quadrature::gauss<double, 30>::integrate(inner, -1.0, 1.0);
}

}  // namespace

TEST_CASE("sphere monomial integrals", "[huygens]") {
  const PiMultiple c = sphere_monomial_integral(2, {0, 0});
  CHECK(c.coefficient == 2);
  CHECK(c.pi_power == 1);
  CHECK_THAT(sphere_monomial_integral(3, {2, 0, 0}).value(), WithinAbs(4 * M_PI / 3, 1e-14));
  CHECK(sphere_monomial_integral(3, {2, 0, 0}).coefficient == Rational(4, 3));
  CHECK(sphere_monomial_integral(2, {1, 1}).coefficient == 0);
  CHECK_THAT(sphere_area(4).value(), WithinAbs(2 * M_PI * M_PI, 1e-13));
  CHECK_THAT(sphere_area(5).value(), WithinAbs(8 * M_PI * M_PI / 3, 1e-13));
}

TEST_CASE("sphere integrals agree with quadrature", "[huygens][oracle]") {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      CHECK_THAT(sphere_monomial_integral(2, {a, b}).value(), WithinAbs(sphere_quadrature({a, b}), 1e-12));
      for (int c = 0; c <= 4; ++c)
        CHECK_THAT(sphere_monomial_integral(3, {a, b, c}).value(), WithinAbs(sphere_quadrature({a, b, c}), 1e-12));
    }
}

TEST_CASE("exact averages", "[huygens]") {
  const MultiPoly r2 = x(2, 0) * x(2, 0) + x(2, 1) * x(2, 1);
  CHECK(ball_average_exact(r2) == t_pow(2, Rational(1, 2)));
  CHECK(sphere_average_exact(r2) == t_pow(2));
  for (int q = 1; q <= 4; ++q) {
    CHECK(ball_average_exact(MultiPoly::constant(q, 1)) == LaurentPoly::constant(1));
    CHECK(sphere_average_exact(MultiPoly::constant(q, 1)) == LaurentPoly::constant(1));
  }
}

TEST_CASE("Pizzetti series", "[huygens]") {
  const MultiPoly r2 = x(2, 0) * x(2, 0) + x(2, 1) * x(2, 1);
  CHECK(pizzetti_constant(4, 1) == 8);
  CHECK(pizzetti_constant(2, 1) == 4);
  CHECK(pizzetti_ball(r2) == t_pow(2, Rational(1, 2)));
  CHECK(pizzetti_sphere(r2) == t_pow(2));
  const MultiPoly harmonic = x(2, 0) * x(2, 0) - x(2, 1) * x(2, 1);
  CHECK(pizzetti_ball(harmonic).is_zero());
  CHECK(pizzetti_sphere(harmonic).is_zero());
  const MultiPoly shifted = harmonic.translated({3, 1});
  CHECK(pizzetti_ball(shifted) == LaurentPoly::constant(8));
}

TEST_CASE("Pizzetti constants mirror the phi series", "[huygens][property]") {
  for (int n = 1; n <= 10; ++n)
    for (int k = 0; k <= 8; ++k) {
      const Rational b = series_coefficient(n, k);
      CHECK(1 / pizzetti_constant(n, k) == abs(b));
      CHECK((b > 0) == (k % 2 == 0));
    }
}

TEST_CASE("Pizzetti equals the exact averages on random polynomials", "[huygens][property]") {
  tools::SplitMix64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const int q = 1 + i % 3;
    const MultiPoly g = tools::random_polynomial(q, 8, 6, rng);
    INFO(g.to_string());
    CHECK(pizzetti_ball(g) == ball_average_exact(g));
    CHECK(pizzetti_sphere(g) == sphere_average_exact(g));
  }
}

TEST_CASE("one-dimensional ball average", "[huygens][property]") {
  tools::SplitMix64 rng(32);
  for (int i = 0; i < 50; ++i) {
    const MultiPoly g = tools::random_polynomial(1, 8, 5, rng);
    // (1/2s) int_{-s}^{s} x^k dx = s^k/(k+1) for even k, 0 for odd k.
    LaurentPoly expected;
    for (const auto& [alpha, c] : g.terms())
      if (alpha[0] % 2 == 0) expected += t_pow(alpha[0], c / (alpha[0] + 1));
    CHECK(pizzetti_ball(g) == expected);
  }
}

TEST_CASE("flux corollary", "[huygens]") {
  const MultiPoly one = MultiPoly::constant(2, 1);
  const PolyKForm f = PolyKForm::basis(x(2, 0), {1});
  CHECK(divergence_scalar(f) == one);
  const FluxReport r = flux_corollary_check(f);
  CHECK(r.ball_side == t_pow(1));
  CHECK(r.flux_side == t_pow(1));
  CHECK(r.max_deviation == 0);
  // closed: d(x y) = y dx + x dy
  const PolyKForm closed = PolyKForm::basis(x(2, 1), {0}) + PolyKForm::basis(x(2, 0), {1});
  CHECK(flux_corollary_check(closed).flux_side.is_zero());
  CHECK(flux_corollary_check(closed).ball_side.is_zero());
}

TEST_CASE("average flux agrees with direct circle quadrature", "[huygens][oracle]") {
  tools::SplitMix64 rng(33);
  for (int i = 0; i < 20; ++i) {
    const MultiPoly p = tools::random_polynomial(2, 4, 4, rng), q = tools::random_polynomial(2, 4, 4, rng);
    const PolyKForm f = PolyKForm::basis(p, {0}) + PolyKForm::basis(q, {1});
    const double t = 0.7;
    const int n = 256;
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const double th = 2 * M_PI * k / n, cx = t * std::cos(th), cy = t * std::sin(th);
      s += p.evaluate(std::vector<double>{cx, cy}) * (-cy) + q.evaluate(std::vector<double>{cx, cy}) * cx;
    }
    const double flux = s * 2 * M_PI / n;
    CHECK_THAT(average_flux(f).evaluate(t), WithinAbs(flux / (2 * M_PI * t), 1e-12));
  }
}

TEST_CASE("flux corollary on random forms", "[huygens][property]") {
  tools::SplitMix64 rng(34);
  for (int i = 0; i < 50; ++i) {
    const int q = 2 + i % 2;
    PolyKForm f(q, q - 1);
    for (int skip = 0; skip < q; ++skip) {
      std::vector<int> axes;
      for (int a = 0; a < q; ++a)
        if (a != skip) axes.push_back(a);
      f += PolyKForm::basis(tools::random_polynomial(q, 4, 4, rng), axes);
    }
    CHECK(flux_corollary_check(f).max_deviation == 0);
  }
}

TEST_CASE("polarization examples", "[huygens][polarization]") {
  const PolarizationExpansion xy = polarization_expand({1, 1});
  CHECK(xy.prefactor == Rational(1, 8));
  CHECK(xy.terms.size() == 4);
  CHECK(xy.expand() == x(2, 0) * x(2, 1));
  const PolarizationExpansion xyz = polarization_expand({1, 1, 1});
  CHECK(xyz.prefactor == Rational(1, 48));
  CHECK(xyz.expand() == x(3, 0) * x(3, 1) * x(3, 2));
  const PolarizationExpansion x2y = polarization_expand({2, 1});
  CHECK(x2y.expand() == x2y.target());
  CHECK(x2y.target() == x(2, 0) * x(2, 0) * x(2, 1));
  CHECK_THROWS_AS(polarization_expand({7, 6}), SizeError);
}

TEST_CASE("polarization spans every monomial of degree <= 6 in <= 4 variables", "[huygens][polarization][property]") {
  int count = 0;
  for (int k = 1; k <= 4; ++k) {
    std::vector<int> e(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == k) {
        const PolarizationExpansion p = polarization_expand(e);
        CHECK(p.expand() == p.target());
        ++count;
        return;
      }
      for (int m = 0; m <= left; ++m) {
        e[static_cast<std::size_t>(pos)] = m;
        rec(pos + 1, left - m);
      }
    };
    rec(0, 6);
  }
  CHECK(count == 7 + 28 + 84 + 210);
}

TEST_CASE("finite difference identity and normalization", "[huygens][polarization]") {
  CHECK(finite_difference_identity(3, 2) == 0);
  CHECK(finite_difference_identity(3, 3) == -6);
  CHECK(polarization_normalization(4) == 16);
  BigInt fact = 1;
  for (int n = 1; n <= 10; ++n) {
    fact *= n;
    for (int j = 0; j < n; ++j) CHECK(finite_difference_identity(n, j) == 0);
    CHECK(finite_difference_identity(n, n) == (n % 2 ? -fact : fact));
    CHECK(polarization_normalization(n) == Rational(BigInt(1) << n));
  }
}
