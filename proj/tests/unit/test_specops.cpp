#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <Eigen/SVD>

#include "bwave/besselfn.hpp"
#include "bwave/errors.hpp"
#include "bwave/specops.hpp"
#include "bwave/tools/rng.hpp"
#include "json.hpp"

using namespace bwave;
using Catch::Matchers::WithinAbs;

namespace {

Cochain random_cochain(const SpectralDomain& d, int degree, std::uint64_t seed) {
  tools::SplitMix64 rng(seed);
  Cochain c = d.zero_cochain(degree);
  for (Index i = 0; i < c.coefficients.size(); ++i) c.coefficients(i) = rng.normal();
  return c;
}

Cochain circle_mode(const SpectralDomain& c, int degree, int k, int trig, double value = 1.0) {
  Cochain u = c.zero_cochain(degree);
  u.coefficients(c.fourier_layout()->index(degree, static_cast<std::size_t>(k), trig, 0)) = value;
  return u;
}

std::vector<SpectralDomain> small_domains() {
  std::vector<SpectralDomain> v;
  v.push_back(build_circle_domain(6));
  v.push_back(build_torus_domain(2, 3));
  v.push_back(build_torus_domain(3, 1));
  v.push_back(build_simplicial_domain(octahedron_surface()));
  return v;
}

}  // namespace

TEST_CASE("functional calculus of identity and square", "[specops]") {
  const SpectralDomain t = build_torus_domain(2, 2);
  tools::SplitMix64 rng(4);
  Eigen::VectorXd u(t.dimension());
  for (Index i = 0; i < u.size(); ++i) u(i) = rng.normal();
  CHECK((functional_calculus(t, [](double x) { return x; }, u) - t.apply_dirac(u)).norm() < 1e-10);
  CHECK((functional_calculus(t, [](double x) { return x * x; }, u) - t.apply_laplacian(u)).norm() < 1e-10);
}

TEST_CASE("functional calculus of cos(tD) on a circle mode", "[specops]") {
  const SpectralDomain c = build_circle_domain(4);
  for (int k = 1; k <= 4; ++k)
    for (double t : {0.1, 0.37, 1.2}) {
      const Cochain u = circle_mode(c, 0, k, 1);
      const Cochain r = functional_calculus(c, [t](double l) { return std::cos(l * t); }, u);
      CHECK(r.degree == 0);
      CHECK((r.coefficients - std::cos(2 * M_PI * k * t) * u.coefficients).norm() < 1e-12);
    }
  CHECK_THROWS_AS(functional_calculus(c, [](double l) { return std::sin(0.3 * l); }, circle_mode(c, 0, 1, 1)),
                  std::invalid_argument);
}

TEST_CASE("d_t on the circle is the discrete derivative", "[specops]") {
  const SpectralDomain c = build_circle_domain(3);
  const double s = 1 / std::sqrt(2.0);
  for (double t : {0.1, 1.0 / 3, 0.9}) {
    // u = sin(2 pi x) = s * (sqrt 2 sin) ; d_t u = sin(2 pi t) cos(2 pi x) dx
    const Cochain r = deformed_d(c, t, circle_mode(c, 0, 1, 1, s));
    CHECK(r.degree == 1);
    CHECK((r.coefficients - circle_mode(c, 1, 1, 0, s * std::sin(2 * M_PI * t)).coefficients).norm() < 1e-13);
  }
}

TEST_CASE("d_0 is zero and harmonic forms stay harmonic", "[specops]") {
  for (const SpectralDomain& d : small_domains()) {
    const Cochain u = random_cochain(d, 0, 5);
    CHECK(deformed_d(d, 0.0, u).coefficients.norm() == 0.0);
    // A harmonic 1-form: the kernel eigenvectors of the Laplacian in degree 1.
    if (d.top_degree() >= 2) {
      Cochain h = d.zero_cochain(1);
      for (const EigenBlock& b : d.blocks())
        for (Index j = 0; j < b.values.size(); ++j)
          if (std::abs(b.values(j)) < 1e-9)
            for (std::size_t i = 0; i < b.indices.size(); ++i)
              if (d.degree_of(b.indices[i]) == 1) h.coefficients(b.indices[i] - d.offset(1)) += b.vectors(Index(i), j);
      for (double t : {0.3, 1.7}) CHECK(deformed_d(d, t, h).coefficients.norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(deformed_d(build_circle_domain(2), -0.1, build_circle_domain(2).zero_cochain(0)),
                  std::invalid_argument);
}

TEST_CASE("deformed Dirac operator", "[specops]") {
  const SpectralDomain c = build_circle_domain(8);
  CHECK(deformed_dirac(c, 0.5).norm() < 1e-14);
  CHECK(deformed_dirac(c, 0.0).norm() == 0.0);
  for (const SpectralDomain& d : small_domains())
    for (double t : {0.2, 0.9}) {
      const SpectralOperator dt = deformed_dirac(d, t);
      const Eigen::MatrixXd m = dt.dense();
      const double svd = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
      double expected = 0.0;
      for (double l : d.eigenvalues()) expected = std::max(expected, std::abs(psi(d.ambient_dimension() + 2, t * l)));
      CHECK_THAT(dt.norm(), WithinAbs(svd, 1e-10));
      CHECK_THAT(dt.norm(), WithinAbs(expected, 1e-12));
    }
}

TEST_CASE("Betti persistence on the circle and torus", "[specops][betti]") {
  const SpectralDomain c = build_circle_domain(8);
  CHECK(betti_numbers(c, 1 / std::sqrt(5.0)) == std::vector<int>{1, 1});
  CHECK(betti_numbers(c, 0.5) == std::vector<int>{17, 17});
  // sin(pi k / 2) = 0 for even k: modes 2, 4, 6, 8, each a cos/sin pair.
  CHECK(betti_numbers(c, 0.25) == std::vector<int>{9, 9});
  CHECK(betti_numbers(build_circle_domain(2), 0.25) == std::vector<int>{3, 3});
  CHECK(betti_numbers(build_torus_domain(2, 4), 1 / std::sqrt(7.0)) == std::vector<int>{1, 2, 1});
  CHECK(betti_numbers(build_simplicial_domain(octahedron_surface()), 0.3) == std::vector<int>{1, 0, 1});
}

TEST_CASE("kernel counting refuses an unresolved gap", "[specops][betti]") {
  CHECK(count_kernel({0.0, 1e-20, 1.0}, 1e-8) == 2);
  CHECK_THROWS_AS(count_kernel({0.0, 5e-8, 1.0}, 1e-8), SpectralGapError);
  CHECK_THROWS_AS(count_kernel({0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("d_t squares to zero", "[specops][property]") {
  for (const SpectralDomain& d : small_domains())
    for (double t : {0.1, 0.7, 2.5}) {
      if (d.top_degree() < 2) continue;
      const Cochain u = random_cochain(d, 0, 11);
      CHECK(deformed_d(d, t, deformed_d(d, t, u)).coefficients.norm() < 1e-10);
    }
}

TEST_CASE("eigenvectors of D are eigenvectors of D_t", "[specops][property]") {
  for (const SpectralDomain& d : small_domains()) {
    const double t = 0.63;
    const SpectralOperator dt = deformed_dirac(d, t);
    for (const EigenBlock& b : d.blocks())
      for (Index j = 0; j < b.values.size(); ++j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d.dimension());
        for (std::size_t i = 0; i < b.indices.size(); ++i) v(b.indices[i]) = b.vectors(Index(i), j);
        const double mu = psi(d.ambient_dimension() + 2, t * b.values(j));
        CHECK((dt.apply(v) - mu * v).norm() < 1e-9);
      }
  }
}

TEST_CASE("d_t / t tends to d quadratically", "[specops][property]") {
  const SpectralDomain d = build_torus_domain(2, 2);
  const Cochain u = random_cochain(d, 1, 12);
  const Eigen::VectorXd du = d.d(1) * u.coefficients;
  std::vector<double> c;
  for (double t : {1e-1, 1e-2, 1e-3}) {
    const double err = (deformed_d(d, t, u).coefficients / t - du).norm();
    c.push_back(err / (t * t));
  }
  // t = 0.1 is still outside the asymptotic regime for |m| = 2 modes.
  CHECK(c[1] / c[0] > 0.8);
  CHECK(c[1] / c[0] < 1.25);
  CHECK(c[2] / c[1] > 0.99);
  CHECK(c[2] / c[1] < 1.01);
}

TEST_CASE("d_t adjoint consistency", "[specops][property]") {
  for (const SpectralDomain& d : small_domains())
    for (double t : {0.4, 1.9}) {
      const Cochain u = random_cochain(d, 0, 13);
      const Cochain w = random_cochain(d, 1, 14);
      const double lhs = deformed_d(d, t, u).coefficients.dot(w.coefficients);
      const double rhs = u.coefficients.dot(deformed_d_adjoint(d, t, w).coefficients);
      CHECK_THAT(lhs, WithinAbs(rhs, 1e-10 * (1 + std::abs(lhs))));
    }
}

TEST_CASE("dense d_t matrix agrees with its action", "[specops]") {
  const SpectralDomain d = build_torus_domain(2, 2);
  const Eigen::MatrixXd m = deformed_d_matrix(d, 0.8);
  const Cochain u = random_cochain(d, 1, 15);
  const Eigen::VectorXd r = m * d.embed(u);
  CHECK((d.extract(r, 2).coefficients - deformed_d(d, 0.8, u).coefficients).norm() < 1e-12);
  CHECK_THROWS_AS(deformed_d_matrix(build_torus_domain(3, 5), 0.5), SizeError);
}

TEST_CASE("symmetry commutators", "[specops][symmetry]") {
  const SpectralDomain c = build_circle_domain(6);
  const SparseMatrix shift = torus_isometry(c, {1}, {1.0 / 3});
  const SparseMatrix reflect = torus_isometry(c, {-1}, {0.0});
  const SpectralDomain t2 = build_torus_domain(2, 3);
  const SparseMatrix quarter = torus_isometry(t2, {0, -1, 1, 0}, {0.0, 0.0});
  const SparseMatrix both = torus_isometry(t2, {0, 1, 1, 0}, {0.25, 0.1});
  SparseMatrix id(c.dimension(), c.dimension());
  id.setIdentity();
  for (double t : {0.3, 1.7, 4.2}) {
    CHECK(symmetry_commutator(c, shift, t) < 1e-10);
    CHECK(symmetry_commutator(c, reflect, t) < 1e-10);
    CHECK(symmetry_commutator(c, id, t) == 0.0);
    CHECK(symmetry_commutator(t2, quarter, t) < 1e-9);
    CHECK(symmetry_commutator(t2, both, t) < 1e-9);
  }
  // The pullbacks are orthogonal.
  const Eigen::MatrixXd q = Eigen::MatrixXd(quarter);
  CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(q.rows(), q.cols())).norm() < 1e-12);
}

TEST_CASE("a non-symmetry fails the commutation precondition", "[specops][symmetry]") {
  const SpectralDomain c = build_circle_domain(3);
  SparseMatrix p(c.dimension(), c.dimension());
  p.setIdentity();
  p.coeffRef(1, 1) = 2.0;
  CHECK_THROWS_AS(symmetry_commutator(c, p, 0.5), PreconditionError);
  CHECK_THROWS_AS(torus_isometry(c, {2}, {0.0}), std::invalid_argument);
}

TEST_CASE("discrete wave map", "[specops][wavemap]") {
  const int m = 8;
  const SpectralDomain c = build_circle_domain(m);
  const double h = std::asin(0.9) / (2 * M_PI * m);
  const DiscreteWaveMap map(c, h);
  CHECK_THAT(map.operator_norm(), WithinAbs(0.9, 1e-12));

  const WaveState zero{Eigen::VectorXd::Zero(c.dimension()), Eigen::VectorXd::Zero(c.dimension())};
  const WaveState z1 = map.step(zero);
  CHECK(z1.u.norm() == 0.0);
  CHECK(z1.v.norm() == 0.0);

  tools::SplitMix64 rng(16);
  WaveState s{Eigen::VectorXd(c.dimension()), Eigen::VectorXd(c.dimension())};
  for (Index i = 0; i < c.dimension(); ++i) {
    s.u(i) = rng.normal();
    s.v(i) = rng.normal();
  }
  const double n0 = std::sqrt(s.u.squaredNorm() + s.v.squaredNorm());
  s.u /= n0;
  s.v /= n0;
  const double bound = map.orbit_norm_squared_bound(s);
  CHECK(bound < 100.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    s = map.step(s);
    worst = std::max(worst, s.u.squaredNorm() + s.v.squaredNorm());
  }
  CHECK(worst <= bound * (1 + 1e-12));

    // psi_4 = 2 J_1 peaks at 1.16, so this h is not a contraction.
  CHECK_THROWS_AS(DiscreteWaveMap(c, 1.84 / (2 * M_PI), 2), PreconditionError);
}

TEST_CASE("discrete wave map keeps eigenmodes on their companion ellipse", "[specops][wavemap]") {
  const SpectralDomain c = build_circle_domain(4);
  const double h = 0.03;
  const DiscreteWaveMap map(c, h);
  const EigenBlock& b = c.blocks().back();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(c.dimension());
  for (std::size_t i = 0; i < b.indices.size(); ++i) v(b.indices[i]) = b.vectors(Index(i), 0);
  const double a = psi(3, h * b.values(0));
  WaveState s{0.7 * v, -0.2 * v};
  auto invariant = [&](const WaveState& w) {
    const double x = w.u.dot(v), y = w.v.dot(v);
    return x * x - a * x * y + y * y;
  };
  const double i0 = invariant(s);
  for (int i = 0; i < 1000; ++i) {
    s = map.step(s);
    CHECK_THAT(invariant(s), WithinAbs(i0, 1e-12));
    CHECK((s.u - s.u.dot(v) * v).norm() < 1e-12);
  }
}

TEST_CASE("spectrum JSON lists one entry per degree", "[specops]") {
  const auto j = nlohmann::json::parse(spectrum_json(build_circle_domain(2)));
  REQUIRE(j.size() == 2);
  CHECK(j[0]["degree"] == 0);
  CHECK(j[1]["eigenvalues"].size() == 5);
  CHECK(std::abs(j[0]["eigenvalues"][0].get<double>()) < 1e-12);
}
