#pragma once

#include <vector>

#include "bwave/laurent.hpp"
#include "bwave/multipoly.hpp"

namespace bwave {

/// coefficient * pi^pi_power
struct PiMultiple {
  Rational coefficient;
  int pi_power = 0;
  double value() const;
};

/// Integral of x^alpha over the unit sphere S^{q-1} in R^q, exactly.
PiMultiple sphere_monomial_integral(int q, const Exponent& alpha);
/// |S^{q-1}|
PiMultiple sphere_area(int q);

/// E over the ball B_t(0) / the sphere W_t(0) of g, as a polynomial in t.
LaurentPoly ball_average_exact(const MultiPoly& g);
LaurentPoly sphere_average_exact(const MultiPoly& g);

/// prod_{j=1..k} 2j (n - 2 + 2j)
Rational pizzetti_constant(int n, int k);
/// sum_k t^{2k} (Delta^k g)(0) / C(q+2, k), Delta the positive Laplacian.
LaurentPoly pizzetti_ball(const MultiPoly& g);
/// sum_k t^{2k} (Delta^k g)(0) / C(q, k).
LaurentPoly pizzetti_sphere(const MultiPoly& g);

/// Scalar s with d f = s dx_0 ^ ... ^ dx_{q-1}, for a (q-1)-form f.
MultiPoly divergence_scalar(const PolyKForm& f);
/// Flux of f through W_t(0) divided by |W_t|, integrated directly on the
/// sphere (no Stokes).
LaurentPoly average_flux(const PolyKForm& f);

struct FluxReport {
  LaurentPoly ball_side;  // t E_{B_t}[s], from the Pizzetti series
  LaurentPoly flux_side;  // q flux / |W_t|
  Rational max_deviation;
};

FluxReport flux_corollary_check(const PolyKForm& f);

/// One term sign * (sum_v coefficients[v] x_v)^power of a polarization
/// expansion.
struct PolarizationTerm {
  int sign = 1;
  std::vector<int> coefficients;
  int power = 0;
};

struct PolarizationExpansion {
  std::vector<int> exponents;
  Rational prefactor;  // 1 / (n! 2^n)
  std::vector<PolarizationTerm> terms;
  /// prefactor * sum_terms, expanded.
  MultiPoly expand() const;
  /// prod x_v^{m_v}
  MultiPoly target() const;
};

/// x_1^{m_1} ... x_k^{m_k} as a signed average of n-th powers of linear
/// forms, n = sum m_i <= 12. Throws SizeError above the cap.
PolarizationExpansion polarization_expand(const std::vector<int>& exponents);

/// sum_{k=0..n} (-1)^k C(n,k) k^j
BigInt finite_difference_identity(int n, int j);
/// (1/n!) sum_k C(n,k) (-1)^k (n - 2k)^n
Rational polarization_normalization(int n);

}  // namespace bwave
