#include "bwave/tools/verify.hpp"

#include <chrono>
#include <cmath>
#include <exception>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bwave/besselfn.hpp"
#include "bwave/geomfront.hpp"
#include "bwave/huygens.hpp"
#include "bwave/locality_probe.hpp"
#include "bwave/specops.hpp"
#include "bwave/waveforms.hpp"

namespace bwave::tools {
namespace {

using Clock = std::chrono::steady_clock;
using mp = boost::multiprecision::cpp_bin_float_50;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CaseResult below(const std::string& name, double measured, double bound) {
  return CaseResult{name, std::isfinite(measured) && measured < bound, measured, bound, {}};
}

CaseResult exact(const std::string& name, double mismatches) {
  return CaseResult{name, mismatches == 0.0, mismatches, 0.0, {}};
}

// Runs body; an escaped exception becomes a failing case.
SuiteResult run_suite(const std::string& name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult s;
  s.name = name;
  const auto start = Clock::now();
  try {
    body(s);
  } catch (const std::exception& e) {
    s.cases.push_back(CaseResult{"exception", false, NAN, 0.0, e.what()});
  }
  s.seconds = seconds_since(start);
  return s;
}

mp j0_series(const mp& r) {
  mp term = 1, sum = 1;
  const mp x = r * r / 4;
  for (int k = 1; k < 400; ++k) {
    term *= -x / (mp(k) * k);
    sum += term;
    if (abs(term) < mp("1e-45")) break;
  }
  return sum;
}

mp two_j1_over_r_series(const mp& r) {
  mp term = 1, sum = 1;
  const mp x = r * r / 4;
  for (int k = 1; k < 400; ++k) {
    term *= -x / (mp(k) * (k + 1));
    sum += term;
    if (abs(term) < mp("1e-45")) break;
  }
  return sum;
}

}  // namespace

Cochain random_smooth_cochain(const SpectralDomain& domain, int degree, double decay, SplitMix64& rng) {
  const FourierLayout* layout = domain.fourier_layout();
  if (!layout) throw std::invalid_argument("random smooth cochain needs a torus domain");
  Cochain c = domain.zero_cochain(degree);
  for (std::size_t m = 0; m < layout->modes.size(); ++m) {
    const double w = std::exp(-decay * layout->wavenumber(m) / (2.0 * M_PI));
    for (int trig = 0; trig < (m == 0 ? 1 : 2); ++trig)
      for (std::size_t p = 0; p < layout->subsets[static_cast<std::size_t>(degree)].size(); ++p)
        c.coefficients(layout->index(degree, m, trig, p)) = w * rng.normal();
  }
  return c;
}

MultiPoly random_polynomial(int q, int max_degree, int terms, SplitMix64& rng) {
  MultiPoly g(q);
  const int count = static_cast<int>(rng.integer(1, terms));
  for (int i = 0; i < count; ++i) {
    Exponent alpha(static_cast<std::size_t>(q), 0);
    int budget = static_cast<int>(rng.integer(0, max_degree));
    for (int a = 0; a < q && budget > 0; ++a) {
      const int e = a == q - 1 ? budget : static_cast<int>(rng.integer(0, budget));
      alpha[static_cast<std::size_t>(a)] = e;
      budget -= e;
    }
    // shuffle which axis receives the remainder
    const int shift = static_cast<int>(rng.integer(0, q - 1));
    Exponent rotated(alpha.size());
    for (int a = 0; a < q; ++a) rotated[static_cast<std::size_t>((a + shift) % q)] = alpha[static_cast<std::size_t>(a)];
    long long p = 0;
    while (p == 0) p = rng.integer(-9, 9);
    g += MultiPoly::monomial(rotated, Rational(p) / Rational(rng.integer(1, 9)));
  }
  return g;
}

SuiteResult verify_bessel_identities(const VerifyOptions&) {
  return run_suite("bessel-identities", [](SuiteResult& s) {
    const auto start = Clock::now();
    double ode = 0.0, recursion = 0.0, closed = 0.0;
    for (int q = 1; q <= 8; ++q) {
      for (int i = 1; i <= 200; ++i) {
        const double r = 30.0 * i / 200.0;
        ode = std::max(ode, std::abs(ode_residual(q, r)));
        // (phi_{q+2} r^q)' = q phi_q r^(q-1), divided through by r^(q-1)
        const double lhs = phi_derivative(q + 2, r) * r + q * phi(q + 2, r);
        recursion = std::max(recursion, std::abs(lhs - q * phi(q, r)));
        if (q <= 5) {
          const mp R(r);
          mp oracle;
          switch (q) {
            case 1: oracle = cos(R); break;
            case 2: oracle = j0_series(R); break;
            case 3: oracle = sin(R) / R; break;
            case 4: oracle = two_j1_over_r_series(R); break;
            default: oracle = 3 * (sin(R) - R * cos(R)) / (R * R * R); break;
          }
          closed = std::max(closed, std::abs(phi(q, r) - oracle.convert_to<double>()));
        }
      }
    }
    s.cases.push_back(below("ode residual, q=1..8, r in (0,30]", ode, 1e-9));
    s.cases.push_back(below("recursion lemma residual", recursion, 1e-8));
    s.cases.push_back(below("closed forms cos, J0, sinc, 2J1/r, 3(sin r - r cos r)/r^3", closed, 1e-10));
    s.cases.push_back(below("runtime seconds", seconds_since(start), 5.0));
  });
}

SuiteResult verify_wave_residuals(const VerifyOptions& o) {
  return run_suite("theorem1-residuals", [&](SuiteResult& s) {
    const auto start = Clock::now();
    SplitMix64 rng = SplitMix64(o.seed).split(2);
    struct Setup {
      std::string name;
      int q;
      int m;
    };
    std::vector<Setup> setups = {{"circle M=8", 1, 8}, {"torus q=2 M=8", 2, 8}, {"torus q=3 M=4", 3, 4}};
    if (o.quick) setups = {{"circle M=8", 1, 8}, {"torus q=2 M=4", 2, 4}, {"torus q=3 M=2", 3, 2}};
    for (const auto& setup : setups) {
      const SpectralDomain dom = build_torus_domain(setup.q, setup.m);
      double worst = 0.0;
      for (int degree = 0; degree < dom.top_degree(); ++degree) {
        const Cochain f = random_smooth_cochain(dom, degree, 2.0, rng);
        for (int q = 1; q <= 6; ++q)
          for (double t : {0.5, 1.0, 2.0}) {
            worst = std::max(worst, residual_deformed(make_deformed_velocity(dom, q, f), t, 1e-3));
            worst = std::max(worst, residual_deformed(make_deformed_position(dom, q, f), t, 1e-3));
          }
      }
      s.cases.push_back(below(setup.name + " max residual", worst, 1e-6));
    }
    s.cases.push_back(below("runtime seconds", seconds_since(start), 30.0));
  });
}

SuiteResult verify_dalembert(const VerifyOptions& o) {
  return run_suite("dalembert-anchor", [&](SuiteResult& s) {
    SplitMix64 rng = SplitMix64(o.seed).split(3);
    const SpectralDomain circle = build_circle_domain(8);
    const FourierLayout& layout = *circle.fourier_layout();
    double worst = 0.0;
    for (int sample = 0; sample < 20; ++sample) {
      Cochain f = circle.zero_cochain(0);
      for (Index i = 0; i < f.coefficients.size(); ++i) f.coefficients(i) = rng.normal();
      for (double t : {0.1, 1.0 / 3.0, 0.9}) {
        const Cochain u = deformed_d(circle, t, f);
        // [f(x+t) - f(x-t)]/2 for f = a sqrt2 cos(wx) + b sqrt2 sin(wx) is
        // sin(wt) (b sqrt2 cos(wx) - a sqrt2 sin(wx)).
        Eigen::VectorXd oracle = Eigen::VectorXd::Zero(u.coefficients.size());
        for (std::size_t m = 1; m < layout.modes.size(); ++m) {
          const double st = std::sin(layout.wavenumber(m) * t);
          const double a = f.coefficients(layout.index(0, m, 0, 0)), b = f.coefficients(layout.index(0, m, 1, 0));
          oracle(layout.index(1, m, 0, 0)) = st * b;
          oracle(layout.index(1, m, 1, 0)) = -st * a;
        }
        worst = std::max(worst, (u.coefficients - oracle).cwiseAbs().maxCoeff());
      }
    }
    s.cases.push_back(below("20 random f, t in {0.1, 1/3, 0.9}, max coefficient error", worst, 1e-12));
  });
}

SuiteResult verify_pizzetti(const VerifyOptions& o) {
  return run_suite("pizzetti-exactness", [&](SuiteResult& s) {
    const auto start = Clock::now();
    SplitMix64 rng = SplitMix64(o.seed).split(4);
    const int count = o.quick ? 40 : 200;
    int ball_bad = 0, sphere_bad = 0;
    for (int i = 0; i < count; ++i) {
      const int q = 1 + i % 3;
      const MultiPoly g = random_polynomial(q, 8, 6, rng);
      if (!(pizzetti_ball(g) == ball_average_exact(g))) ++ball_bad;
      if (!(pizzetti_sphere(g) == sphere_average_exact(g))) ++sphere_bad;
    }
    s.cases.push_back(exact(std::to_string(count) + " random polynomials, ball mismatches", ball_bad));
    s.cases.push_back(exact(std::to_string(count) + " random polynomials, sphere mismatches", sphere_bad));
    s.cases.push_back(below("runtime seconds", seconds_since(start), 60.0));
  });
}

SuiteResult verify_flux(const VerifyOptions& o) {
  return run_suite("flux-corollary", [&](SuiteResult& s) {
    SplitMix64 rng = SplitMix64(o.seed).split(5);
    int bad = 0;
    double largest = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int q = 2 + i % 2;
      PolyKForm f(q, q - 1);
      for (int axis = 0; axis < q; ++axis) {
        std::vector<int> axes;
        for (int a = 0; a < q; ++a)
          if (a != axis) axes.push_back(a);
        f += PolyKForm::basis(random_polynomial(q, 4, 4, rng), axes);
      }
      const FluxReport r = flux_corollary_check(f);
      if (r.max_deviation != 0) ++bad;
      largest = std::max(largest, to_double(r.max_deviation));
    }
    s.cases.push_back(exact("50 random (q-1)-forms, q in {2,3}, non-identical", bad));
    s.cases.push_back(exact("largest coefficient deviation", largest));
  });
}

SuiteResult verify_polarization(const VerifyOptions&) {
  return run_suite("polarization", [](SuiteResult& s) {
    int bad = 0, total = 0;
    for (int vars = 1; vars <= 4; ++vars) {
      std::vector<int> e(static_cast<std::size_t>(vars), 0);
      for (;;) {
        int deg = 0;
        for (int v : e) deg += v;
        if (deg <= 6) {
          ++total;
          const PolarizationExpansion p = polarization_expand(e);
          if (!(p.expand() == p.target())) ++bad;
        }
        int i = 0;
        while (i < vars && ++e[static_cast<std::size_t>(i)] > 6) e[static_cast<std::size_t>(i++)] = 0;
        if (i == vars) break;
      }
    }
    s.cases.push_back(exact("monomials of degree <= 6 in <= 4 variables (" + std::to_string(total) + "), failures", bad));
    int fd_bad = 0, norm_bad = 0;
    for (int n = 0; n <= 10; ++n) {
      BigInt n_factorial = 1;
      for (int k = 2; k <= n; ++k) n_factorial *= k;
      for (int j = 0; j <= n; ++j) {
        const BigInt expected = j < n ? BigInt(0) : ((n % 2) ? BigInt(-n_factorial) : n_factorial);
        if (finite_difference_identity(n, j) != expected) ++fd_bad;
      }
      if (polarization_normalization(n) != Rational(BigInt(1) << n)) ++norm_bad;
    }
    s.cases.push_back(exact("finite-difference identity table n <= 10, mismatches", fd_bad));
    s.cases.push_back(exact("normalization R = 2^n for n <= 10, mismatches", norm_bad));
  });
}

SuiteResult verify_harmonic_persistence(const VerifyOptions&) {
  return run_suite("harmonic-persistence", [](SuiteResult& s) {
    const int m = 8;
    const SpectralDomain circle = build_circle_domain(m);
    auto mismatch = [](const std::vector<int>& got, const std::vector<int>& want) {
      double d = 0;
      for (std::size_t i = 0; i < want.size(); ++i) d += std::abs((i < got.size() ? got[i] : -1) - want[i]);
      return d;
    };
    s.cases.push_back(exact("t = 1/sqrt(5): Betti (1,1), count error",
                            mismatch(betti_numbers(circle, 1.0 / std::sqrt(5.0)), {1, 1})));
    const int all = 2 * m + 1;
    s.cases.push_back(exact("t = 1/2: all 2M+1 modes harmonic, count error",
                            mismatch(betti_numbers(circle, 0.5), {all, all})));
    const double l_t_norm = deformed_laplacian(circle, 0.5).norm();
    s.cases.push_back(below("t = 1/2: ||L_t||", l_t_norm, 1e-20));
    // kernel of L_t at t = 1/4: frequencies k with sin(pi k / 2) = 0
    int predicted = 0;
    for (int k = -m; k <= m; ++k)
      if (k % 2 == 0) ++predicted;
    s.cases.push_back(exact("t = 1/4: even-frequency kernel (" + std::to_string(predicted) + " per degree), count error",
                            mismatch(betti_numbers(circle, 0.25), {predicted, predicted})));
  });
}

SuiteResult verify_symmetry(const VerifyOptions&) {
  return run_suite("symmetry-commutation", [](SuiteResult& s) {
    struct Setup {
      std::string name;
      int q;
      int m;
      std::vector<int> a;
      std::vector<double> b;
    };
    const std::vector<Setup> setups = {
        {"circle translation by 1/3", 1, 8, {1}, {1.0 / 3.0}},
        {"circle reflection", 1, 8, {-1}, {0.0}},
        {"torus q=2 translation", 2, 4, {1, 0, 0, 1}, {0.25, 1.0 / 3.0}},
        {"torus q=2 quarter-turn rotation", 2, 4, {0, 1, -1, 0}, {0.0, 0.0}},
        {"torus q=3 axis rotation with shift", 3, 2, {0, 0, 1, 1, 0, 0, 0, 1, 0}, {0.1, 0.2, 0.3}},
    };
    for (const auto& setup : setups) {
      const SpectralDomain dom = build_torus_domain(setup.q, setup.m);
      const SparseMatrix u = torus_isometry(dom, setup.a, setup.b);
      double worst = 0.0;
      for (double t : {0.3, 1.7}) worst = std::max(worst, symmetry_commutator(dom, u, t));
      s.cases.push_back(below(setup.name + ", t in {0.3, 1.7}", worst, 1e-8));
    }
  });
}

SuiteResult verify_locality(const VerifyOptions&) {
  return run_suite("huygens-locality", [](SuiteResult& s) {
    const auto start = Clock::now();
    LocalityProbeConfig cfg;
    cfg.q = 2;
    cfg.max_frequency = 64;
    cfg.sigma = 0.02;
    cfg.t = 0.3;
    cfg.annulus = 0.05;
    const LocalityProbeResult coarse = locality_probe(cfg);
    cfg.max_frequency = 128;
    const LocalityProbeResult fine = locality_probe(cfg);
    if (!coarse.resolved || !fine.resolved)
      throw std::runtime_error("probe unresolved: " + coarse.reason + " " + fine.reason);
    s.cases.push_back(below("M=64 deformed leakage x 10 / classical leakage",
                            10.0 * coarse.deformed_leakage / coarse.classical_leakage, 1.0));
    s.cases.push_back(below("deformed leakage M=128 / M=64", fine.deformed_leakage / coarse.deformed_leakage, 1.0));
    s.cases.push_back(below("classical leakage relative change M=64 -> 128",
                            std::abs(fine.classical_leakage - coarse.classical_leakage) / coarse.classical_leakage,
                            0.1));
    CaseResult wake{"classical wake level at M=128 (must exceed bound)", fine.classical_leakage > 1e-4,
                    fine.classical_leakage, 1e-4, {}};
    s.cases.push_back(wake);
    s.cases.push_back(below("runtime seconds", seconds_since(start), 120.0));
  });
}

SuiteResult verify_geometry(const VerifyOptions&) {
  return run_suite("geometry", [](SuiteResult& s) {
    const SurfaceChart sphere = sphere_chart();
    double worst = 0.0;
    for (double t : {0.25, 0.5, 0.75, 1.0})
      worst = std::max(worst, std::abs(wavefront_length(sphere, Vec2(0, 0), t, 64) - 2 * M_PI * std::sin(t)));
    s.cases.push_back(below("unit sphere |W_t| vs 2 pi sin t, t <= 1, n_theta=64", worst, 1e-6));
    const double h = 0.1;
    s.cases.push_back(below("R2-D2 sphere h=0.1 vs 1 - h^2/4",
                            std::abs(r2d2_curvature(sphere, Vec2(0, 0), h) - (1 - h * h / 4)), 3e-3));
    s.cases.push_back(below("R2-D2 hyperbolic h=0.1 vs -(1 + h^2/4)",
                            std::abs(r2d2_curvature(hyperbolic_chart(), Vec2(0, 1), h) + (1 + h * h / 4)), 3e-3));
    const OneForm f{[](double, double) { return 0.0; }, [](double x, double) { return std::sin(2 * M_PI * x); }};
    s.cases.push_back(below("flat torus global cancellation, 256 centers",
                            std::abs(global_cancellation(torus_chart(), f, 0.2, 256)), 1e-6));
  });
}

SuiteResult verify_discrete_wave(const VerifyOptions& o) {
  return run_suite("discrete-wave-map", [&](SuiteResult& s) {
    const int m = 8;
    const SpectralDomain circle = build_circle_domain(m);
    const double h = std::asin(0.9) / (2.0 * M_PI * m);
    const DiscreteWaveMap map(circle, h, 1);
    s.cases.push_back(below("| ||D_h|| - 0.9 |", std::abs(map.operator_norm() - 0.9), 1e-12));
    SplitMix64 rng = SplitMix64(o.seed).split(11);
    WaveState state{Eigen::VectorXd(circle.dimension()), Eigen::VectorXd(circle.dimension())};
    for (Index i = 0; i < circle.dimension(); ++i) {
      state.u(i) = rng.normal();
      state.v(i) = rng.normal();
    }
    // Per eigenmode the map is the companion matrix C = [[a, -1], [1, 0]].
    // S = [[1, -a/2], [-a/2, 1]] satisfies C^T S C = S, so the orbit stays in
    // the ellipse x^T S x = const and |x|^2 <= x^T S x / lambda_min(S).
    double bound = 0.0, invariance = 0.0;
    const auto& blocks = circle.blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& blk = blocks[b];
      for (Index j = 0; j < blk.values.size(); ++j) {
        const double a = map.deformed_dirac_operator().block_values()[b](j);
        Eigen::Matrix2d c, sm;
        c << a, -1, 1, 0;
        sm << 1, -a / 2, -a / 2, 1;
        invariance = std::max(invariance, (c.transpose() * sm * c - sm).norm());
        double x = 0, y = 0;
        for (std::size_t i = 0; i < blk.indices.size(); ++i) {
          x += blk.vectors(static_cast<Index>(i), j) * state.u(blk.indices[i]);
          y += blk.vectors(static_cast<Index>(i), j) * state.v(blk.indices[i]);
        }
        const Eigen::Vector2d z(x, y);
        const double lambda_min = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(sm).eigenvalues()(0);
        bound += z.dot(sm * z) / lambda_min;
      }
    }
    s.cases.push_back(below("companion invariance ||C^T S C - S||", invariance, 1e-14));
    int violations = 0;
    double max_ratio = 0.0;
    for (int it = 0; it < 10000; ++it) {
      state = map.step(state);
      const double n2 = state.u.squaredNorm() + state.v.squaredNorm();
      max_ratio = std::max(max_ratio, n2 / bound);
      if (n2 > bound * (1.0 + 1e-12)) ++violations;
    }
    s.cases.push_back(exact("10^4 iterations, ellipse-bound violations", violations));
    s.cases.push_back(below("max |state|^2 / bound", max_ratio, 1.0 + 1e-12));
  });
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "Bessel identity suite", verify_bessel_identities},
      {2, "Deformed wave residuals", verify_wave_residuals},
      {3, "d'Alembert anchor (q=1)", verify_dalembert},
      {4, "Pizzetti exactness", verify_pizzetti},
      {5, "Flux corollary", verify_flux},
      {6, "Polarization", verify_polarization},
      {7, "Harmonic-form persistence", verify_harmonic_persistence},
      {8, "Symmetry commutation", verify_symmetry},
      {9, "Huygens locality probe", verify_locality},
      {10, "Geometry", verify_geometry},
      {11, "Discrete wave map", verify_discrete_wave},
  };
  return list;
}

std::vector<SuiteResult> verify_all(const VerifyOptions& o) {
  std::vector<SuiteResult> out;
  for (const auto& c : criteria()) out.push_back(c.run(o));
  return out;
}

}  // namespace bwave::tools
