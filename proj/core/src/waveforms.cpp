#include "bwave/waveforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bwave/besselfn.hpp"

namespace bwave {
namespace {

void require_finite(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
}

void require_q(int q) {
  if (q < 1) throw std::invalid_argument("Bessel dimension parameter q must be >= 1");
}

Eigen::VectorXd exact_image(const SpectralDomain& domain, const Cochain& f) {
  if (f.degree >= domain.top_degree())
    throw std::invalid_argument("source of top degree " + std::to_string(f.degree) + " has zero derivative");
  return domain.apply_d(domain.embed(f));
}

}  // namespace

const char* to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::classical: return "classical";
    case WaveKind::deformed_velocity: return "deformed_velocity";
    case WaveKind::deformed_position: return "deformed_position";
  }
  return "unknown";
}

int WaveSolution::degree() const { return kind == WaveKind::classical ? source.degree : source.degree + 1; }

Cochain WaveSolution::at(double t) const {
  if (!domain) throw std::logic_error("wave solution without a domain");
  require_finite(t);
  const SpectralDomain& dom = *domain;
  switch (kind) {
    case WaveKind::classical: {
      SpectralOperator c(dom, [t](double lam) { return std::cos(t * lam); });
      SpectralOperator s(dom, [t](double lam) { return t * phi(3, t * lam); });
      Eigen::VectorXd out = c.apply(dom.embed(source)) + s.apply(dom.embed(velocity));
      return dom.extract(out, source.degree);
    }
    case WaveKind::deformed_velocity: {
      const int n = q + 2;
      SpectralOperator op(dom, [t, n](double lam) { return t * phi(n, t * lam); });
      return dom.extract(op.apply(exact_image(dom, source)), source.degree + 1);
    }
    case WaveKind::deformed_position: {
      const int n = q;
      SpectralOperator op(dom, [t, n](double lam) { return phi(n, t * lam); });
      return dom.extract(op.apply(exact_image(dom, source)), source.degree + 1);
    }
  }
  throw std::logic_error("unknown wave kind");
}

WaveSolution make_classical(const SpectralDomain& domain, const Cochain& u0, const Cochain& v0) {
  if (u0.degree != v0.degree) throw std::invalid_argument("initial position and velocity differ in degree");
  (void)domain.embed(u0);
  (void)domain.embed(v0);
  return WaveSolution{&domain, WaveKind::classical, domain.ambient_dimension(), u0, v0};
}

WaveSolution make_deformed_velocity(const SpectralDomain& domain, int q, const Cochain& f) {
  require_q(q);
  (void)exact_image(domain, f);
  return WaveSolution{&domain, WaveKind::deformed_velocity, q, f, {}};
}

WaveSolution make_deformed_position(const SpectralDomain& domain, int q, const Cochain& f) {
  require_q(q);
  (void)exact_image(domain, f);
  return WaveSolution{&domain, WaveKind::deformed_position, q, f, {}};
}

Cochain classical_solution(const SpectralDomain& domain, const Cochain& u0, const Cochain& v0, double t) {
  return make_classical(domain, u0, v0).at(t);
}

Cochain deformed_solution_velocity(const SpectralDomain& domain, int q, const Cochain& f, double t) {
  return make_deformed_velocity(domain, q, f).at(t);
}

Cochain deformed_solution_position(const SpectralDomain& domain, int q, const Cochain& f, double t) {
  return make_deformed_position(domain, q, f).at(t);
}

double residual_deformed(const WaveSolution& solution, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(t >= 5.0 * dt))
    throw std::invalid_argument("residual needs t >= 5 dt to stay away from the singular coefficients at t = 0");
  const SpectralDomain& dom = *solution.domain;
  Eigen::VectorXd u[5];
  for (int j = -2; j <= 2; ++j) u[j + 2] = solution.at(t + j * dt).coefficients;
  const Eigen::VectorXd utt = (-u[4] + 16.0 * u[3] - 30.0 * u[2] + 16.0 * u[1] - u[0]) / (12.0 * dt * dt);
  const Eigen::VectorXd ut = (-u[4] + 8.0 * u[3] - 8.0 * u[1] + u[0]) / (12.0 * dt);
  const int degree = solution.degree();
  const Eigen::VectorXd lu = dom.extract(dom.apply_laplacian(dom.embed(Cochain{degree, u[2]})), degree).coefficients;
  const double qm1 = solution.q - 1;
  Eigen::VectorXd r = utt + lu;
  switch (solution.kind) {
    case WaveKind::classical: break;
    case WaveKind::deformed_velocity: r += qm1 * (ut / t - u[2] / (t * t)); break;
    case WaveKind::deformed_position: r += qm1 * ut / t; break;
  }
  return r.norm();
}

double classical_energy(const WaveSolution& solution, double t, double dt) {
  const SpectralDomain& dom = *solution.domain;
  const Cochain u = solution.at(t);
  const Eigen::VectorXd ut = (-solution.at(t + 2 * dt).coefficients + 8.0 * solution.at(t + dt).coefficients -
                              8.0 * solution.at(t - dt).coefficients + solution.at(t - 2 * dt).coefficients) /
                             (12.0 * dt);
  const Eigen::VectorXd du = dom.apply_dirac(dom.embed(u));
  return ut.squaredNorm() + du.squaredNorm();
}

LaurentPoly bessel_acceleration_position(int q, const LaurentPoly& h) {
  const LaurentPoly h1 = h.derivative();
  return h1.derivative() + Rational(q - 1) * (h1.shifted(-1) - h.shifted(-2));
}

LaurentPoly bessel_acceleration_velocity(int q, const LaurentPoly& h) {
  const LaurentPoly h1 = h.derivative();
  return h1.derivative() + Rational(q - 1) * h1.shifted(-1);
}

namespace {

LaurentPoly factored_form(int q, const LaurentPoly& h) {
  const LaurentPoly inner = h.derivative() - h.shifted(-1);
  return inner.derivative() + Rational(q) * inner.shifted(-1);
}

}  // namespace

LaurentPoly factorization_difference(int q, const LaurentPoly& h) {
  return factored_form(q, h) - bessel_acceleration_position(q, h);
}

double factorization_check(int q, const LaurentPoly& h, double t0, double t1, int samples) {
  if (!(t0 > 0.0) || !(t1 > t0) || samples < 2) throw std::invalid_argument("factorization grid needs 0 < t0 < t1");
  const LaurentPoly lhs = factored_form(q, h);
  const LaurentPoly rhs = bessel_acceleration_position(q, h);
  const Rational a(t0), b(t1);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Rational t = a + (b - a) * Rational(i) / Rational(samples - 1);
    const Rational diff = lhs.evaluate(t) - rhs.evaluate(t);
    worst = std::max(worst, std::abs(to_double(diff)));
  }
  return worst;
}

MonomialSourceSolution monomial_source_solution(int q, int n) {
  if (q < 1 || n < 1) throw std::invalid_argument("monomial source needs q >= 1 and n >= 1");
  MonomialSourceSolution out;
  out.q = q;
  out.n = n;
  const Rational scale = Rational(-1) / Rational(n * (q + n));
  out.f = (LaurentPoly::monomial(1) - LaurentPoly::monomial(n + 1)) * scale;
  out.certificate = bessel_acceleration_position(q, out.f) - LaurentPoly::monomial(n - 1);
  out.value_at_zero = out.f.coefficient(0);
  out.slope_at_zero = out.f.coefficient(1);
  return out;
}

LaurentPoly homogeneous_source_solution(int q, const Rational& a, const Rational& c) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  return LaurentPoly::monomial(2, a / Rational(q + 1)) + LaurentPoly::monomial(1, c);
}

}  // namespace bwave
