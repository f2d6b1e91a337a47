#pragma once

#include <string>
#include <vector>

#include "bwave/spectral_domain.hpp"

namespace bwave {

struct LocalityProbeConfig {
  int q = 2;                 // torus dimension, 2 or 3
  int max_frequency = 64;    // M
  double sigma = 0.02;       // bump support radius
  double t = 0.3;
  double annulus = 0.05;     // w
  int grid = 256;            // evaluation points per axis
  int bump_power = 4;        // f = (1 - (r/sigma)^2)^p
  double tail_limit = 1e-3;  // max L2 energy of f outside the band
  int bins = 50;             // radial histogram bins on [0, 1/2]
};

struct RadialBin {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double deformed = 0.0;   // fraction of the total L2 mass in the bin
  double classical = 0.0;
};

struct LocalityProbeResult {
  bool resolved = false;
  std::string reason;          // why the probe declined to give a verdict
  double spectral_tail = 0.0;  // 1 - ||P_M f||^2 / ||f||^2
  double deformed_leakage = 0.0;
  double classical_leakage = 0.0;
  std::vector<RadialBin> bins;
};

/// Fourier transform of the bump on R^q at wavenumber k = 2 pi |m|.
double bump_fourier_coefficient(int q, int power, double sigma, double k);
/// ||f||^2 of the bump.
double bump_energy(int q, int power, double sigma);

/// The bump as a 0-cochain in a torus domain's trig basis.
Cochain bump_cochain(const SpectralDomain& torus, double sigma, int power = 4);

/// Interior leakage of u = t phi_{q+2}(tD) df (deformed) and of
/// u = t sinc(tD) df (classical) for a radial bump f at the origin: the
/// fraction of the grid L2 mass at torus distance < t - w. Each mode of d f
/// is an eigenvector of L with eigenvalue (2 pi |m|)^2, so both propagators
/// act as scalars per mode; the fields are summed separably on the grid.
LocalityProbeResult locality_probe(const LocalityProbeConfig& config);

}  // namespace bwave
