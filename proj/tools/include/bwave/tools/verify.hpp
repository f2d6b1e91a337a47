#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bwave/multipoly.hpp"
#include "bwave/spectral_domain.hpp"
#include "bwave/tools/report.hpp"
#include "bwave/tools/rng.hpp"

namespace bwave::tools {

struct VerifyOptions {
  std::uint64_t seed = 42;
  bool quick = false;  // smaller sample counts; same tolerances
};

/// Gaussian trig coefficients damped by exp(-decay |m|) on a torus domain.
Cochain random_smooth_cochain(const SpectralDomain& domain, int degree, double decay, SplitMix64& rng);
/// Random polynomial with up to `terms` monomials of total degree <= max_degree
/// and coefficients p/r, |p| <= 9, 1 <= r <= 9.
MultiPoly random_polynomial(int q, int max_degree, int terms, SplitMix64& rng);

struct Criterion {
  int number;
  std::string name;
  std::function<SuiteResult(const VerifyOptions&)> run;
};

/// The acceptance criteria, in order.
const std::vector<Criterion>& criteria();

SuiteResult verify_bessel_identities(const VerifyOptions& o);
SuiteResult verify_wave_residuals(const VerifyOptions& o);
SuiteResult verify_dalembert(const VerifyOptions& o);
SuiteResult verify_pizzetti(const VerifyOptions& o);
SuiteResult verify_flux(const VerifyOptions& o);
SuiteResult verify_polarization(const VerifyOptions& o);
SuiteResult verify_harmonic_persistence(const VerifyOptions& o);
SuiteResult verify_symmetry(const VerifyOptions& o);
SuiteResult verify_locality(const VerifyOptions& o);
SuiteResult verify_geometry(const VerifyOptions& o);
SuiteResult verify_discrete_wave(const VerifyOptions& o);

std::vector<SuiteResult> verify_all(const VerifyOptions& o);

}  // namespace bwave::tools
