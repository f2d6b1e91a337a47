#pragma once

#include <optional>

#include "bwave/laurent.hpp"
#include "bwave/spectral_domain.hpp"

namespace bwave {

enum class WaveKind { classical, deformed_velocity, deformed_position };

const char* to_string(WaveKind kind);

/// A closed-form spectral solution t -> u(t). The domain must outlive it.
///
/// classical:          cos(tD) u0 + t sinc(tD) v0, solves u_tt + L u = 0
/// deformed_velocity:  t phi_{q+2}(tD) d f,        solves D_tt u + L u = 0
/// deformed_position:  phi_q(tD) d f,              solves d_tt u + L u = 0
struct WaveSolution {
  const SpectralDomain* domain = nullptr;
  WaveKind kind = WaveKind::classical;
  int q = 1;
  Cochain source;    // u0 (classical) or f (deformed)
  Cochain velocity;  // v0, classical only

  int degree() const;
  /// Any finite t; the deformed profiles extend as odd / even functions of t.
  Cochain at(double t) const;
};

WaveSolution make_classical(const SpectralDomain& domain, const Cochain& u0, const Cochain& v0);
WaveSolution make_deformed_velocity(const SpectralDomain& domain, int q, const Cochain& f);
WaveSolution make_deformed_position(const SpectralDomain& domain, int q, const Cochain& f);

Cochain classical_solution(const SpectralDomain& domain, const Cochain& u0, const Cochain& v0, double t);
Cochain deformed_solution_velocity(const SpectralDomain& domain, int q, const Cochain& f, double t);
/// The caller passes f; the solution starts at d f.
Cochain deformed_solution_position(const SpectralDomain& domain, int q, const Cochain& f, double t);

/// Norm of the PDE residual matching the solution kind, with 5-point u_tt
/// and 4th-order central u_t. Requires t >= 5 dt > 0.
double residual_deformed(const WaveSolution& solution, double t, double dt = 1e-3);

/// Energy <u_t, u_t> + <Du, Du> of a classical solution, u_t by the same
/// 4th-order stencil.
double classical_energy(const WaveSolution& solution, double t, double dt = 1e-3);

/// D_tt h = h'' + (q-1)(h'/t - h/t^2).
LaurentPoly bessel_acceleration_position(int q, const LaurentPoly& h);
/// d_tt h = h'' + (q-1) h'/t.
LaurentPoly bessel_acceleration_velocity(int q, const LaurentPoly& h);

/// (d/dt + q/t)(d/dt - 1/t) h - D_tt h, exactly.
LaurentPoly factorization_difference(int q, const LaurentPoly& h);
/// Max over a uniform grid on [t0, t1] of |factored form - D_tt h|, both
/// sides evaluated in exact arithmetic. Zero for every Laurent polynomial.
double factorization_check(int q, const LaurentPoly& h, double t0 = 0.5, double t1 = 2.0, int samples = 64);

struct MonomialSourceSolution {
  int q = 1;
  int n = 1;
  LaurentPoly f;            // -t (1 - t^n) / (n (q + n))
  LaurentPoly certificate;  // D_tt f - t^(n-1), the zero polynomial
  Rational value_at_zero;
  Rational slope_at_zero;   // -1 / (n (q + n))
  bool verified() const { return certificate.is_zero(); }
};

/// Solution of D_tt f = t^(n-1) with f(0) = 0.
MonomialSourceSolution monomial_source_solution(int q, int n);

/// a t^2 / (q + 1) + c t, which satisfies D_tt u = a.
LaurentPoly homogeneous_source_solution(int q, const Rational& a, const Rational& c);

}  // namespace bwave
