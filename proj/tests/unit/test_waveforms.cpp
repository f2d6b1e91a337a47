#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bwave/besselfn.hpp"
#include "bwave/specops.hpp"
#include "bwave/tools/verify.hpp"
#include "bwave/waveforms.hpp"

using namespace bwave;
using Catch::Matchers::WithinAbs;

namespace {

Cochain single_mode(const SpectralDomain& d, int degree, const std::vector<int>& m, int trig, unsigned mask) {
  const FourierLayout& l = *d.fourier_layout();
  Cochain c = d.zero_cochain(degree);
  c.coefficients(l.index(degree, *l.find_mode(m), trig, l.subset_position(degree, mask))) = 1.0;
  return c;
}

Cochain smooth(const SpectralDomain& d, int degree, std::uint64_t seed) {
  tools::SplitMix64 rng(seed);
  return tools::random_smooth_cochain(d, degree, 2.0, rng);
}

LaurentPoly t_pow(int p, const Rational& c = 1) { return LaurentPoly::monomial(p, c); }

}  // namespace

TEST_CASE("classical solution at t = 0 and d'Alembert on the circle", "[waveforms]") {
  const SpectralDomain c = build_circle_domain(4);
  const Cochain u0 = smooth(c, 0, 1), v0 = smooth(c, 0, 2);
  CHECK((classical_solution(c, u0, v0, 0.0).coefficients - u0.coefficients).norm() < 1e-14);

  // f = sin(2 pi x); d'Alembert: [f(x+t) - f(x-t)]/2 = sin(2 pi t) cos(2 pi x).
  const double s = 1 / std::sqrt(2.0);
  const Cochain f = single_mode(c, 0, {1}, 1, 0u);
  const Cochain df = c.extract(c.apply_d(c.embed(f)), 1);
  for (double t : {0.1, 0.45, 1.3}) {
    const Cochain u = classical_solution(c, c.zero_cochain(1), df, t);
    Cochain expected = c.zero_cochain(1);
    expected.coefficients(c.fourier_layout()->index(1, 1, 0, 0)) = std::sin(2 * M_PI * t) / s;
    // df carries 2 pi sqrt2 cos; d'Alembert for v0 = f' gives the sqrt2 sin(2 pi t) cos(2 pi x).
    CHECK((u.coefficients - expected.coefficients * s).norm() < 1e-12);
  }
}

TEST_CASE("classical energy is conserved", "[waveforms]") {
  const SpectralDomain c = build_circle_domain(3);
  const WaveSolution sol = make_classical(c, smooth(c, 0, 3), smooth(c, 0, 4));
  const double e0 = classical_energy(sol, 0.0, 2e-4);
  for (double t = 0.0; t <= 3.0; t += 0.25) CHECK_THAT(classical_energy(sol, t, 2e-4), WithinAbs(e0, 1e-10 * e0));
}

TEST_CASE("deformed velocity solution", "[waveforms]") {
  const SpectralDomain c = build_circle_domain(5);
  const Cochain f = smooth(c, 0, 5);
  CHECK(deformed_solution_velocity(c, 3, f, 0.0).coefficients.norm() == 0.0);
  // q = 1 is the ordinary wave equation.
  const Cochain df = c.extract(c.apply_d(c.embed(f)), 1);
  for (double t : {0.2, 0.8, 2.5}) {
    const Cochain a = deformed_solution_velocity(c, 1, f, t);
    const Cochain b = classical_solution(c, c.zero_cochain(1), df, t);
    CHECK((a.coefficients - b.coefficients).norm() < 1e-12);
  }
  const SpectralDomain t3 = build_torus_domain(3, 1);
  const WaveSolution sol = make_deformed_velocity(t3, 3, single_mode(t3, 2, {1, 0, 0}, 0, 0b110));
  CHECK(sol.degree() == 3);
  CHECK(sol.at(0.7).coefficients.norm() > 1e-3);
  CHECK(residual_deformed(sol, 0.7) < 1e-7);
}

TEST_CASE("deformed position solution", "[waveforms]") {
  const SpectralDomain t2 = build_torus_domain(2, 2);
  const Cochain f = single_mode(t2, 0, {1, 1}, 1, 0u);
  const Cochain df = t2.extract(t2.apply_d(t2.embed(f)), 1);
  CHECK((deformed_solution_position(t2, 2, f, 0.0).coefficients - df.coefficients).norm() < 1e-14);
  const double eps = 1e-4;
  const Eigen::VectorXd slope =
      (deformed_solution_position(t2, 2, f, eps).coefficients - deformed_solution_position(t2, 2, f, -eps).coefficients) /
      (2 * eps);
  CHECK(slope.norm() < 1e-6);
  const SpectralDomain t3 = build_torus_domain(3, 1);
  const WaveSolution sol = make_deformed_position(t3, 3, single_mode(t3, 1, {0, 1, 0}, 1, 0b001));
  CHECK(residual_deformed(sol, 1.0) < 1e-7);
}

TEST_CASE("residual harness", "[waveforms]") {
  const SpectralDomain t3 = build_torus_domain(3, 2);
  const WaveSolution a = make_deformed_velocity(t3, 3, smooth(t3, 1, 6));
  CHECK(residual_deformed(a, 1.0, 1e-3) < 1e-6);
  const SpectralDomain c = build_circle_domain(8);
  const WaveSolution b = make_deformed_position(c, 5, smooth(c, 0, 7));
  CHECK(residual_deformed(b, 2.0, 1e-3) < 1e-6);
  const WaveSolution cl = make_classical(c, smooth(c, 0, 8), smooth(c, 0, 9));
  CHECK(residual_deformed(cl, 1.5, 1e-3) < 1e-6);
  CHECK_THROWS_AS(residual_deformed(a, 4e-3, 1e-3), std::invalid_argument);
}

TEST_CASE("solutions are linear in the data", "[waveforms][property]") {
  const SpectralDomain t2 = build_torus_domain(2, 3);
  const Cochain f = smooth(t2, 0, 11), g = smooth(t2, 0, 12);
  Cochain h = f;
  h.coefficients = 2.5 * f.coefficients - 0.75 * g.coefficients;
  for (double t : {0.3, 1.1}) {
    const auto v = [&](const Cochain& x) { return deformed_solution_velocity(t2, 4, x, t).coefficients; };
    const auto p = [&](const Cochain& x) { return deformed_solution_position(t2, 2, x, t).coefficients; };
    CHECK((v(h) - (2.5 * v(f) - 0.75 * v(g))).norm() < 1e-12);
    CHECK((p(h) - (2.5 * p(f) - 0.75 * p(g))).norm() < 1e-12);
  }
}

TEST_CASE("degree bookkeeping", "[waveforms][property]") {
  const SpectralDomain t3 = build_torus_domain(3, 1);
  for (int k = 0; k < 3; ++k) {
    CHECK(deformed_solution_velocity(t3, 3, smooth(t3, k, 13), 0.4).degree == k + 1);
    CHECK(deformed_solution_position(t3, 3, smooth(t3, k, 14), 0.4).degree == k + 1);
  }
  CHECK_THROWS_AS(make_deformed_velocity(t3, 3, smooth(t3, 3, 15)), std::invalid_argument);
}

TEST_CASE("deformed velocity amplitudes decay like t^((1-q)/2)", "[waveforms][property]") {
  const SpectralDomain t2 = build_torus_domain(2, 2);
  const FourierLayout& l = *t2.fourier_layout();
  for (int q : {2, 3, 4}) {
    const WaveSolution sol = make_deformed_velocity(t2, q, single_mode(t2, 0, {1, 2}, 0, 0u));
    const std::size_t m = *l.find_mode({1, 2});
    auto envelope = [&](double a, double b) {
      double e = 0.0;
      for (double t = a; t <= b; t += 0.01) {
        const Cochain u = sol.at(t);
        double amp = 0.0;
        for (std::size_t p = 0; p < 2; ++p) amp += std::pow(u.coefficients(l.index(1, m, 1, p)), 2);
        e = std::max(e, std::sqrt(amp) * std::pow(t, (q - 1) / 2.0));
      }
      return e;
    };
    const double first = envelope(50, 75), second = envelope(75, 100);
    INFO("q=" << q << " " << first << " " << second);
    CHECK(second / first > 0.9);
    CHECK(second / first < 1.1);
  }
}

TEST_CASE("Bessel accelerations and their factorization", "[waveforms][exact]") {
  for (int q = 1; q <= 8; ++q) {
    CHECK(bessel_acceleration_position(q, t_pow(1)).is_zero());
    CHECK(factorization_difference(q, t_pow(1)).is_zero());
  }
  // t^2, q = 3: 2 + 2 (2 - 1) = 4.
  CHECK(bessel_acceleration_position(3, t_pow(2)) == LaurentPoly::constant(4));
  CHECK(factorization_difference(3, t_pow(2)).is_zero());
  CHECK(factorization_difference(7, t_pow(5)).is_zero());
  CHECK(bessel_acceleration_velocity(3, t_pow(2)) == LaurentPoly::constant(6));
  CHECK(factorization_check(7, t_pow(5)) == 0.0);
}

TEST_CASE("factorization holds for random Laurent polynomials", "[waveforms][property]") {
  tools::SplitMix64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    LaurentPoly h;
    for (int i = 0; i < 5; ++i)
      h += t_pow(static_cast<int>(rng.integer(-4, 8)), Rational(static_cast<int>(rng.integer(-9, 9)), 1 + static_cast<int>(rng.integer(0, 8))));
    const int q = static_cast<int>(rng.integer(1, 8));
    CHECK(factorization_difference(q, h).is_zero());
    CHECK(factorization_check(q, h) == 0.0);
  }
}

TEST_CASE("monomial source solutions", "[waveforms][exact]") {
  const MonomialSourceSolution a = monomial_source_solution(3, 2);
  CHECK(a.f == (t_pow(3) - t_pow(1)) * Rational(1, 10));
  CHECK(a.verified());
  CHECK(bessel_acceleration_position(3, a.f) == t_pow(1));
  CHECK(a.value_at_zero == 0);
  CHECK(a.slope_at_zero == Rational(-1, 10));
  const MonomialSourceSolution b = monomial_source_solution(1, 1);
  CHECK(b.f == (t_pow(2) - t_pow(1)) * Rational(1, 2));
  CHECK(b.verified());
  for (int q = 1; q <= 6; ++q)
    for (int n = 1; n <= 6; ++n) CHECK(monomial_source_solution(q, n).verified());
  for (int q = 1; q <= 6; ++q) {
    const LaurentPoly u = homogeneous_source_solution(q, Rational(3, 7), Rational(-2));
    CHECK(bessel_acceleration_position(q, u) == LaurentPoly::constant(Rational(3, 7)));
  }
}
