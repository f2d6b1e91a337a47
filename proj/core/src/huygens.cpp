#include "bwave/huygens.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "bwave/errors.hpp"

namespace bwave {
namespace {

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// Gamma(m + 1/2) / sqrt(pi)
Rational half_gamma(int m) {
  BigInt four_m = 1;
  for (int i = 0; i < m; ++i) four_m *= 4;
  return Rational(factorial(2 * m)) / Rational(four_m * factorial(m));
}

int total(const Exponent& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

// I(alpha) / |S^{q-1}|, a rational number.
Rational sphere_moment(int q, const Exponent& alpha) {
  static thread_local std::map<std::pair<int, Exponent>, Rational> cache;
  auto key = std::make_pair(q, alpha);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const PiMultiple num = sphere_monomial_integral(q, alpha);
  const PiMultiple den = sphere_area(q);
  const Rational r = num.coefficient / den.coefficient;
  cache.emplace(key, r);
  return r;
}

}  // namespace

double PiMultiple::value() const { return to_double(coefficient) * std::pow(M_PI, pi_power); }

PiMultiple sphere_monomial_integral(int q, const Exponent& alpha) {
  if (q < 1) throw std::invalid_argument("sphere dimension q must be >= 1");
  if (alpha.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("multi-index length must equal q");
  PiMultiple out{0, q / 2};
  Rational numerator = 2;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("negative exponent");
    if (a % 2) return out;
    numerator *= half_gamma(a / 2);
  }
  const int s = total(alpha) + q;  // Gamma(s / 2)
  Rational denominator;
  if (s % 2 == 0) denominator = Rational(factorial(s / 2 - 1));
  else denominator = half_gamma((s - 1) / 2);
  out.coefficient = numerator / denominator;
  return out;
}

PiMultiple sphere_area(int q) { return sphere_monomial_integral(q, Exponent(static_cast<std::size_t>(q), 0)); }

LaurentPoly ball_average_exact(const MultiPoly& g) {
  const int q = g.variables();
  LaurentPoly out;
  for (const auto& [alpha, c] : g.terms()) {
    const int a = total(alpha);
    out += LaurentPoly::monomial(a, c * Rational(q) * sphere_moment(q, alpha) / Rational(a + q));
  }
  return out;
}

LaurentPoly sphere_average_exact(const MultiPoly& g) {
  const int q = g.variables();
  LaurentPoly out;
  for (const auto& [alpha, c] : g.terms()) out += LaurentPoly::monomial(total(alpha), c * sphere_moment(q, alpha));
  return out;
}

Rational pizzetti_constant(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("pizzetti constant needs n >= 1, k >= 0");
  Rational c = 1;
  for (int j = 1; j <= k; ++j) c *= Rational(2 * j) * Rational(n - 2 + 2 * j);
  return c;
}

namespace {

LaurentPoly pizzetti(const MultiPoly& g, int n) {
  LaurentPoly out;
  MultiPoly power = g;
  for (int k = 0; !power.is_zero(); ++k) {
    out += LaurentPoly::monomial(2 * k, power.value_at_origin() / pizzetti_constant(n, k));
    power = power.laplacian();
  }
  return out;
}

}  // namespace

LaurentPoly pizzetti_ball(const MultiPoly& g) { return pizzetti(g, g.variables() + 2); }

LaurentPoly pizzetti_sphere(const MultiPoly& g) { return pizzetti(g, g.variables()); }

MultiPoly divergence_scalar(const PolyKForm& f) {
  const int q = f.variables();
  if (f.degree() != q - 1) throw std::invalid_argument("flux needs a (q-1)-form");
  const PolyKForm df = exterior_derivative(f);
  return df.component((1u << q) - 1u);
}

LaurentPoly average_flux(const PolyKForm& f) {
  const int q = f.variables();
  if (f.degree() != q - 1) throw std::invalid_argument("flux needs a (q-1)-form");
  const unsigned all = (1u << q) - 1u;
  LaurentPoly out;
  for (int i = 0; i < q; ++i) {
    // f_i dx_{all \ i} is the flux form of the field F_i = (-1)^i f_i e_i.
    const MultiPoly fi = f.component(all & ~(1u << i));
    if (fi.is_zero()) continue;
    const MultiPoly xf = MultiPoly::variable(q, i) * fi * Rational((i % 2) ? -1 : 1);
    for (const auto& [gamma, c] : xf.terms())
      out += LaurentPoly::monomial(total(gamma) - 1, c * sphere_moment(q, gamma));
  }
  return out;
}

FluxReport flux_corollary_check(const PolyKForm& f) {
  const int q = f.variables();
  FluxReport r;
  r.ball_side = pizzetti_ball(divergence_scalar(f)).shifted(1);
  r.flux_side = average_flux(f) * Rational(q);
  r.max_deviation = (r.ball_side - r.flux_side).max_abs_coefficient();
  return r;
}

MultiPoly PolarizationExpansion::expand() const {
  const int vars = static_cast<int>(exponents.size());
  std::map<std::vector<int>, BigInt> merged;
  for (const auto& t : terms) merged[t.coefficients] += t.sign;
  MultiPoly out(vars);
  for (const auto& [coeffs, weight] : merged) {
    if (weight == 0) continue;
    std::vector<Rational> c(coeffs.begin(), coeffs.end());
    const int n = terms.empty() ? 0 : terms.front().power;
    out += MultiPoly::linear(c).pow(n) * Rational(weight);
  }
  return out * prefactor;
}

MultiPoly PolarizationExpansion::target() const { return MultiPoly::monomial(exponents); }

PolarizationExpansion polarization_expand(const std::vector<int>& exponents) {
  if (exponents.empty()) throw std::invalid_argument("polarization needs at least one variable");
  int n = 0;
  std::vector<int> slot_variable;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    if (exponents[v] < 0) throw std::invalid_argument("negative exponent");
    n += exponents[v];
    for (int e = 0; e < exponents[v]; ++e) slot_variable.push_back(static_cast<int>(v));
  }
  if (n > 12) throw SizeError("polarization degree " + std::to_string(n) + " exceeds the cap 12", n);
  PolarizationExpansion out;
  out.exponents = exponents;
  out.prefactor = Rational(1) / Rational(factorial(n) * (BigInt(1) << n));
  if (n == 0) {
    // 0! * (empty product) = 1 = 2^0 * (empty linear form)^0
    out.terms.push_back({1, std::vector<int>(exponents.size(), 0), 0});
    return out;
  }
  for (unsigned s = 0; s < (1u << n); ++s) {
    PolarizationTerm t;
    t.power = n;
    t.coefficients.assign(exponents.size(), 0);
    t.sign = (std::popcount(s) % 2) ? -1 : 1;  // bit set means s_i = -1
    for (int i = 0; i < n; ++i)
      t.coefficients[static_cast<std::size_t>(slot_variable[static_cast<std::size_t>(i)])] += (s & (1u << i)) ? -1 : 1;
    out.terms.push_back(std::move(t));
  }
  // n! prod x = 2^-n sum ...; identifying slots gives n! prod x_v^{m_v}.
  return out;
}

BigInt finite_difference_identity(int n, int j) {
  if (n < 0 || j < 0 || j > n) throw std::invalid_argument("finite difference identity needs 0 <= j <= n");
  BigInt sum = 0;
  for (int k = 0; k <= n; ++k) {
    BigInt power = 1;
    for (int e = 0; e < j; ++e) power *= k;
    sum += ((k % 2) ? -1 : 1) * binomial(n, k) * power;
  }
  return sum;
}

Rational polarization_normalization(int n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  BigInt sum = 0;
  for (int k = 0; k <= n; ++k) {
    BigInt power = 1;
    for (int e = 0; e < n; ++e) power *= (n - 2 * k);
    sum += ((k % 2) ? -1 : 1) * binomial(n, k) * power;
  }
  return Rational(sum) / Rational(factorial(n));
}

}  // namespace bwave
