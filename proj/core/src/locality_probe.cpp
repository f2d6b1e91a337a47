#include "bwave/locality_probe.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "bwave/besselfn.hpp"

namespace bwave {
namespace {

double unit_sphere_area(int q) { return 2.0 * std::pow(M_PI, q / 2.0) / std::tgamma(q / 2.0); }

double beta(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

double torus_distance(double x) {
  const double d = x - std::floor(x);
  return std::min(d, 1.0 - d);
}

using Grid = std::vector<double>;  // N^q values, row-major

// Real field sum_m B_m e^{2 pi i m.x} on the N^q grid, m in {-M..M}^q, B
// stored row-major over (2M+1)^q.
Grid separable_sum(int q, int m_max, int n, const std::vector<std::complex<double>>& b) {
  const int side = 2 * m_max + 1;
  Eigen::MatrixXcd e(n, side);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < side; ++k) e(i, k) = std::polar(1.0, 2.0 * M_PI * (k - m_max) * static_cast<double>(i) / n);
  Grid out(static_cast<std::size_t>(std::pow(n, q)), 0.0);
  if (q == 2) {
    Eigen::MatrixXcd bm(side, side);
    for (int a = 0; a < side; ++a)
      for (int c = 0; c < side; ++c) bm(a, c) = b[static_cast<std::size_t>(a * side + c)];
    const Eigen::MatrixXcd u = e * bm * e.transpose();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i * n + j)] = u(i, j).real();
    return out;
  }
  std::vector<Eigen::MatrixXcd> slices(static_cast<std::size_t>(side));
  for (int a = 0; a < side; ++a) {
    Eigen::MatrixXcd bm(side, side);
    for (int c = 0; c < side; ++c)
      for (int d = 0; d < side; ++d) bm(c, d) = b[static_cast<std::size_t>((a * side + c) * side + d)];
    slices[static_cast<std::size_t>(a)] = e * bm * e.transpose();
  }
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < side; ++a) acc += e(i, a) * slices[static_cast<std::size_t>(a)];
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[static_cast<std::size_t>((i * n + j) * n + k)] = acc(j, k).real();
  }
  return out;
}

}  // namespace

double bump_fourier_coefficient(int q, int power, double sigma, double k) {
  return unit_sphere_area(q) * std::pow(sigma, q) * beta(q / 2.0, power + 1) / 2.0 * phi(q + 2 * power + 2, k * sigma);
}

double bump_energy(int q, int power, double sigma) {
  return unit_sphere_area(q) * std::pow(sigma, q) * beta(q / 2.0, 2 * power + 1) / 2.0;
}

Cochain bump_cochain(const SpectralDomain& torus, double sigma, int power) {
  const FourierLayout* layout = torus.fourier_layout();
  if (!layout) throw std::invalid_argument("bump_cochain needs a torus domain");
  Cochain f = torus.zero_cochain(0);
  for (std::size_t mode = 0; mode < layout->modes.size(); ++mode) {
    const double c = bump_fourier_coefficient(layout->q, power, sigma, layout->wavenumber(mode));
    f.coefficients(layout->index(0, mode, 0, 0)) = mode == 0 ? c : std::sqrt(2.0) * c;
  }
  return f;
}

LocalityProbeResult locality_probe(const LocalityProbeConfig& cfg) {
  if (cfg.q != 2 && cfg.q != 3) throw std::invalid_argument("locality probe supports q = 2 or 3");
  if (cfg.max_frequency < 1 || cfg.grid < 8 || cfg.bins < 1 || cfg.bump_power < 1)
    throw std::invalid_argument("locality probe needs M >= 1, grid >= 8, bins >= 1, power >= 1");
  if (!(cfg.sigma > 0.0) || !(cfg.annulus > 0.0) || !(cfg.t > cfg.annulus))
    throw std::invalid_argument("locality probe needs sigma > 0 and 0 < w < t");
  if (!(cfg.t + cfg.annulus < 0.5))
    throw std::invalid_argument("locality probe needs t + w below half the torus period");
  const int q = cfg.q, mmax = cfg.max_frequency, n = cfg.grid;
  if (std::pow(static_cast<double>(n), q) > 3.0e7)
    throw std::invalid_argument("evaluation grid too large");

  LocalityProbeResult res;
  const int side = 2 * mmax + 1;
  const std::size_t count = static_cast<std::size_t>(std::pow(side, q));
  std::map<long, double> coeff, prop_def, prop_cl;
  double in_band = 0.0;
  std::vector<int> m(static_cast<std::size_t>(q));
  auto decode = [&](std::size_t idx) {
    for (int a = q - 1; a >= 0; --a) {
      m[static_cast<std::size_t>(a)] = static_cast<int>(idx % side) - mmax;
      idx /= side;
    }
    long r2 = 0;
    for (int c : m) r2 += static_cast<long>(c) * c;
    return r2;
  };
  for (std::size_t idx = 0; idx < count; ++idx) {
    const long r2 = decode(idx);
    auto it = coeff.find(r2);
    if (it == coeff.end()) {
      const double k = 2.0 * M_PI * std::sqrt(static_cast<double>(r2));
      it = coeff.emplace(r2, bump_fourier_coefficient(q, cfg.bump_power, cfg.sigma, k)).first;
      prop_def[r2] = cfg.t * phi(q + 2, cfg.t * k);
      prop_cl[r2] = cfg.t * phi(3, cfg.t * k);
    }
    in_band += it->second * it->second;
  }
  res.spectral_tail = std::max(0.0, 1.0 - in_band / bump_energy(q, cfg.bump_power, cfg.sigma));
  if (cfg.t < 10.0 * cfg.sigma) {
    res.reason = "unresolved: t < 10 sigma, the wave front is not separated from the source";
    return res;
  }
  if (res.spectral_tail > cfg.tail_limit) {
    res.reason = "unresolved: bump spectral tail " + std::to_string(res.spectral_tail) + " exceeds " +
                 std::to_string(cfg.tail_limit);
    return res;
  }

  const std::size_t points = static_cast<std::size_t>(std::pow(n, q));
  Grid mass_def(points, 0.0), mass_cl(points, 0.0);
  for (int j = 0; j < q; ++j) {
    std::vector<std::complex<double>> bd(count), bc(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      const long r2 = decode(idx);
      // d of e^{2 pi i m.x} in direction j: 2 pi i m_j
      const std::complex<double> deriv(0.0, 2.0 * M_PI * m[static_cast<std::size_t>(j)]);
      bd[idx] = coeff[r2] * prop_def[r2] * deriv;
      bc[idx] = coeff[r2] * prop_cl[r2] * deriv;
    }
    const Grid ud = separable_sum(q, mmax, n, bd);
    const Grid uc = separable_sum(q, mmax, n, bc);
    for (std::size_t p = 0; p < points; ++p) {
      mass_def[p] += ud[p] * ud[p];
      mass_cl[p] += uc[p] * uc[p];
    }
  }

  res.bins.resize(static_cast<std::size_t>(cfg.bins));
  const double bin_width = 0.5 * std::sqrt(static_cast<double>(q)) / cfg.bins;
  for (int b = 0; b < cfg.bins; ++b) {
    res.bins[static_cast<std::size_t>(b)].r_lo = b * bin_width;
    res.bins[static_cast<std::size_t>(b)].r_hi = (b + 1) * bin_width;
  }
  double total_def = 0.0, total_cl = 0.0, inner_def = 0.0, inner_cl = 0.0;
  const double inner_radius = cfg.t - cfg.annulus;
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rest = p;
    double r2 = 0.0;
    for (int a = 0; a < q; ++a) {
      const double d = torus_distance(static_cast<double>(rest % n) / n);
      r2 += d * d;
      rest /= n;
    }
    const double r = std::sqrt(r2);
    total_def += mass_def[p];
    total_cl += mass_cl[p];
    if (r < inner_radius) {
      inner_def += mass_def[p];
      inner_cl += mass_cl[p];
    }
    const int b = std::min(cfg.bins - 1, static_cast<int>(r / bin_width));
    res.bins[static_cast<std::size_t>(b)].deformed += mass_def[p];
    res.bins[static_cast<std::size_t>(b)].classical += mass_cl[p];
  }
  if (!(total_def > 0.0) || !(total_cl > 0.0)) {
    res.reason = "unresolved: zero field mass";
    return res;
  }
  for (auto& bin : res.bins) {
    bin.deformed /= total_def;
    bin.classical /= total_cl;
  }
  res.deformed_leakage = inner_def / total_def;
  res.classical_leakage = inner_cl / total_cl;
  res.resolved = true;
  return res;
}

}  // namespace bwave
