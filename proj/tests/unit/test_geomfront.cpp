#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "bwave/errors.hpp"
#include "bwave/geomfront.hpp"
#include "bwave/tools/rng.hpp"

using namespace bwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

OneForm form(ScalarField p, ScalarField q) { return OneForm{std::move(p), std::move(q)}; }

}  // namespace

TEST_CASE("Christoffel symbols", "[geomfront]") {
  const auto flat = christoffel(flat_chart(), Vec2(0.3, -2.0));
  CHECK(flat[0].isZero(0.0));
  CHECK(flat[1].isZero(0.0));

  const double x = 0.9;
  const auto s = christoffel(sphere_polar_chart(), Vec2(x, 0.4));
  CHECK_THAT(s[0](1, 1), WithinAbs(-std::sin(x) * std::cos(x), 1e-9));
  CHECK_THAT(s[1](0, 1), WithinAbs(std::cos(x) / std::sin(x), 1e-9));
  CHECK_THAT(s[1](1, 0), WithinAbs(std::cos(x) / std::sin(x), 1e-9));
  CHECK_THAT(s[0](0, 0), WithinAbs(0.0, 1e-9));

  const double y = 1.7;
  const auto h = christoffel(hyperbolic_chart(), Vec2(0.2, y));
  CHECK_THAT(h[0](0, 1), WithinAbs(-1 / y, 1e-9));
  CHECK_THAT(h[1](0, 0), WithinAbs(1 / y, 1e-9));
  CHECK_THAT(h[1](1, 1), WithinAbs(-1 / y, 1e-9));
  CHECK_THAT(h[0](0, 0), WithinAbs(0.0, 1e-9));

  CHECK_THROWS_AS(christoffel(hyperbolic_chart(), Vec2(0.0, -1.0)), std::out_of_range);
}

TEST_CASE("Christoffel symbols from numeric metric partials", "[geomfront][oracle]") {
  const SurfaceChart numeric("polar", [](double, double) { return 1.0; }, [](double, double) { return 0.0; },
                             [](double x, double) { return std::sin(x) * std::sin(x); }, ChartRect{0.01, 3.13, -10, 10});
  const SurfaceChart analytic = sphere_polar_chart();
  for (double x : {0.3, 1.2, 2.5}) {
    const auto a = christoffel(numeric, Vec2(x, 0.0)), b = christoffel(analytic, Vec2(x, 0.0));
    CHECK((a[0] - b[0]).norm() < 1e-8);
    CHECK((a[1] - b[1]).norm() < 1e-8);
  }
}

TEST_CASE("geodesics", "[geomfront]") {
  for (double th : {0.0, 0.7, 2.0, 4.0}) {
    const GeodesicResult g = geodesic(flat_chart(), Vec2(1, 2), th, 1.5);
    CHECK((g.position - Vec2(1 + 1.5 * std::cos(th), 2 + 1.5 * std::sin(th))).norm() < 1e-10);
    CHECK_THAT(g.jacobi, WithinAbs(1.5, 1e-12));
  }
  // Stereographic sphere chart: the origin is a pole; colatitude = 2 atan(rho).
  for (double t : {0.3, 1.0, 2.5}) {
    const GeodesicResult g = geodesic(sphere_chart(), Vec2(0, 0), 0.4, t, 1000);
    CHECK_THAT(2 * std::atan(g.position.norm()), WithinAbs(t, 1e-8));
    CHECK_THAT(g.jacobi, WithinAbs(std::sin(t), 1e-8));
  }
  const GeodesicResult long_path = geodesic(sphere_chart(), Vec2(0.3, 0.2), 1.1, 3.0);
  CHECK(long_path.speed_drift < 1e-8);
  for (double t : {0.5, 1.5}) {
    CHECK_THAT(jacobi_field(hyperbolic_chart(), Vec2(0, 1), 0.3, t), WithinAbs(std::sinh(t), 1e-8));
    CHECK_THAT(jacobi_field(flat_chart(), Vec2(0, 1), 0.3, t), WithinAbs(t, 1e-12));
  }
  CHECK(default_steps(1.0) == 1000);
  CHECK(default_steps(0.0105) == 11);
}

TEST_CASE("geodesic integration converges under step halving", "[geomfront]") {
  const GeodesicResult a = geodesic(sphere_chart(), Vec2(0.2, -0.1), 2.2, 1.3, 500);
  const GeodesicResult b = geodesic(sphere_chart(), Vec2(0.2, -0.1), 2.2, 1.3, 1000);
  const GeodesicResult c = geodesic(sphere_chart(), Vec2(0.2, -0.1), 2.2, 1.3, 2000);
  const double e1 = (a.position - b.position).norm(), e2 = (b.position - c.position).norm();
  CHECK(e2 < 1e-11);
  CHECK(e1 / e2 > 10.0);  // fourth order: ideally 16
}

TEST_CASE("leaving the chart is an error", "[geomfront]") {
  const SurfaceChart box = chart_from_json(R"({"name": "box", "g11": "1", "g12": "0", "g22": "1", "rect": [-1, 1, -1, 1]})");
  try {
    geodesic(box, Vec2(0, 0), 0.0, 2.0);
    FAIL("no exception");
  } catch (const ChartExitError& e) {
    CHECK_THAT(e.exit_time(), WithinAbs(1.0, 2e-3));
  }
}

TEST_CASE("Jacobi comparison on negative curvature", "[geomfront][property]") {
  const SurfaceChart h = hyperbolic_chart();
  for (double th = 0.0; th < 2 * M_PI; th += 0.5)
    for (double t : {0.1, 0.5, 1.0, 2.0}) CHECK(jacobi_field(h, Vec2(0.5, 2.0), th, t) >= t);
}

TEST_CASE("Brioschi curvature of the round sphere", "[geomfront][property]") {
  for (double x = 0.5; x <= 2.6; x += 0.35) CHECK_THAT(sphere_polar_chart().brioschi_curvature(Vec2(x, 0.3)), WithinAbs(1.0, 1e-5));
  const SurfaceChart s = sphere_chart();
  for (double r : {0.0, 0.4, 1.5}) CHECK_THAT(s.brioschi_curvature(Vec2(r, -0.2)), WithinAbs(1.0, 1e-5));
  CHECK_THAT(hyperbolic_chart().brioschi_curvature(Vec2(0.0, 1.3)), WithinAbs(-1.0, 1e-5));
}

TEST_CASE("wave-front lengths", "[geomfront]") {
  for (double t : {0.25, 0.5, 1.0}) {
    CHECK_THAT(wavefront_length(sphere_chart(), Vec2(0.3, -0.4), t), WithinAbs(2 * M_PI * std::sin(t), 1e-6));
    CHECK_THAT(wavefront_length(flat_chart(), Vec2(0.3, -0.4), t), WithinAbs(2 * M_PI * t, 1e-10));
    CHECK_THAT(wavefront_length(hyperbolic_chart(), Vec2(0.0, 1.0), t), WithinAbs(2 * M_PI * std::sinh(t), 1e-6));
  }
  const WaveFront w = wavefront(sphere_chart(), Vec2(0, 0), 0.5, 16);
  REQUIRE(w.samples.size() == 16);
  CHECK_THAT(w.samples[4].theta, WithinAbs(M_PI / 2, 1e-15));
  for (const FrontSample& s : w.samples) CHECK_THAT(s.jacobi, WithinAbs(std::sin(0.5), 1e-8));
}

TEST_CASE("curvature from wave-front lengths", "[geomfront]") {
  CHECK_THAT(r2d2_curvature(sphere_chart(), Vec2(0, 0), 0.1), WithinAbs(0.9975, 3e-3));
  CHECK_THAT(r2d2_curvature(sphere_chart(), Vec2(0, 0), 0.1),
             WithinAbs((2 * std::sin(0.1) - std::sin(0.2)) / 0.001, 1e-6));
  CHECK_THAT(r2d2_curvature(hyperbolic_chart(), Vec2(0, 1), 0.1), WithinAbs(-1.0025, 3e-3));
  CHECK(std::abs(r2d2_curvature(flat_chart(), Vec2(1, 1), 0.1)) < 1e-8);
  CHECK_THAT(puiseux_curvature(sphere_chart(), Vec2(0, 0), 0.1), WithinAbs(1.0, 1e-2));
  CHECK_THAT(puiseux_curvature(hyperbolic_chart(), Vec2(0, 1), 0.1), WithinAbs(-1.0, 1e-2));
  CHECK(std::abs(puiseux_curvature(flat_chart(), Vec2(1, 1), 0.1)) < 1e-8);
}

TEST_CASE("R2-D2 and Puiseux differ by O(h^2)", "[geomfront][property]") {
  for (const SurfaceChart& c : {sphere_chart(), hyperbolic_chart()}) {
    const Vec2 p = c.name() == "hyperbolic" ? Vec2(0, 1) : Vec2(0.2, 0.1);
    std::vector<double> cs;
    for (double h : {0.2, 0.1, 0.05}) cs.push_back(std::abs(r2d2_curvature(c, p, h) - puiseux_curvature(c, p, h)) / (h * h));
    CHECK_THAT(cs[1], WithinRel(cs[0], 0.1));
    CHECK_THAT(cs[2], WithinRel(cs[1], 0.05));
  }
}

TEST_CASE("boundary R2-D2 on a disc", "[geomfront]") {
  auto extrapolated = [](double R) {
    const double a = r2d2_boundary(R, 0.05 * R), b = r2d2_boundary(R, 0.025 * R);
    return (4 * b - a) / 3;
  };
  CHECK_THAT(extrapolated(1.0), WithinAbs(1.0, 1e-3));
  CHECK_THAT(extrapolated(2.0), WithinAbs(0.5, 1e-3));
  for (double r : {0.1, 0.05, 0.025}) CHECK_THAT(r2d2_boundary(1.0, r), WithinAbs(1.0 + 7 * r * r / 24, 1e-4));
  CHECK(std::abs(r2d2_boundary(1e6, 0.1)) < 1e-5);
  CHECK_THROWS_AS(r2d2_boundary(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("line integrals over wave fronts", "[geomfront]") {
  const OneForm rot = form([](double, double y) { return -y; }, [](double x, double) { return x; });
  for (double t : {0.3, 1.0, 2.0}) {
    const LineIntegral li = wavefront_line_integral(flat_chart(), rot, Vec2(0.4, -1.0), t);
    CHECK_THAT(li.value, WithinAbs(2 * M_PI * t * t, 1e-6));
    CHECK_FALSE(li.self_intersecting);
  }
  const OneForm exact = form([](double, double y) { return y; }, [](double x, double) { return x; });
  CHECK(std::abs(wavefront_line_integral(sphere_chart(), exact, Vec2(0.1, 0.2), 0.8).value) < 1e-8);
}

TEST_CASE("line integral on the sphere equals the surface integral of df", "[geomfront][oracle]") {
  // In stereographic coordinates the geodesic ball around the pole is the
  // Euclidean disc of radius tan(t/2); Green's theorem in the chart.
  const OneForm f = form([](double x, double y) { return x * x * y - y; }, [](double x, double y) { return x * y * y + 3 * x; });
  auto curl = [](double x, double y) { return (y * y + 3) - (x * x - 1); };
  using G = boost::math::quadrature::gauss<double, 20>;
  for (double t : {0.5, 1.2}) {
    const double rho = std::tan(t / 2);
    const double area = G::integrate([&](double r) {
      return G::integrate([&](double th) { return curl(r * std::cos(th), r * std::sin(th)); }, 0.0, 2 * M_PI) * r;
    }, 0.0, rho);
    CHECK_THAT(wavefront_line_integral(sphere_chart(), f, Vec2(0, 0), t).value, WithinAbs(area, 1e-4));
  }
}

TEST_CASE("self-intersection flag past the conjugate point", "[geomfront]") {
  const OneForm rot = form([](double, double y) { return -y; }, [](double x, double) { return x; });
  // From an equator point the fronts refocus at the antipode (t = pi); with
  // 16 rays none passes near the south pole at infinity.
  const Vec2 p(0.8, 0.6);
  CHECK_FALSE(wavefront_line_integral(sphere_chart(), rot, p, 2.0, 16).self_intersecting);
  CHECK(wavefront_line_integral(sphere_chart(), rot, p, 3.5, 16).self_intersecting);
}

TEST_CASE("global cancellation on the flat torus", "[geomfront]") {
  const SurfaceChart torus = torus_chart();
  REQUIRE(torus.period);
  const OneForm f = form([](double, double) { return 0.0; }, [](double x, double) { return std::sin(2 * M_PI * x); });
  CHECK(std::abs(global_cancellation(torus, f, 0.2, 256)) < 1e-6);
  // A single center sees a nonzero integral; the average cancels.
  CHECK(std::abs(wavefront_line_integral(torus, f, Vec2(0.1, 0.0), 0.2).value) > 1e-3);
  const auto dg = [](double x, double y) { return 2 * M_PI * std::cos(2 * M_PI * (x + y)); };
  CHECK(std::abs(wavefront_line_integral(torus, form(dg, dg), Vec2(0.3, 0.6), 0.2).value) < 1e-10);
  CHECK_THROWS_AS(global_cancellation(sphere_chart(), f, 0.2, 16), std::invalid_argument);
  CHECK_THROWS_AS(cancellation_centers(Vec2(1, 1), 10, CenterLayout::grid), std::invalid_argument);
}

TEST_CASE("global cancellation refines on Kronecker centers", "[geomfront][property]") {
  tools::SplitMix64 rng(41);
  double a[4];
  for (double& v : a) v = rng.normal();
  const OneForm f = form([=](double x, double y) { return a[0] * std::sin(2 * M_PI * (x + 2 * y)) + a[1] * std::cos(2 * M_PI * y); },
                         [=](double x, double y) { return a[2] * std::cos(2 * M_PI * (3 * x - y)) + a[3] * std::sin(4 * M_PI * x); });
  const double coarse = std::abs(global_cancellation(torus_chart(), f, 0.2, 64, CenterLayout::kronecker, 32));
  const double fine = std::abs(global_cancellation(torus_chart(), f, 0.2, 256, CenterLayout::kronecker, 32));
  INFO(coarse << " -> " << fine);
  CHECK(fine * 2 <= coarse);
}

TEST_CASE("custom charts from JSON", "[geomfront]") {
  const SurfaceChart c = chart_from_json(
      R"({"name": "round", "g11": "4/(1+x^2+y^2)^2", "g12": "0", "g22": "4/(1+x^2+y^2)^2", "K": "1", "rect": [-5, 5, -5, 5]})");
  CHECK(c.name() == "round");
  CHECK(c.curvature_supplied());
  CHECK_THAT(wavefront_length(c, Vec2(0, 0), 0.7), WithinAbs(2 * M_PI * std::sin(0.7), 1e-6));
  const SurfaceChart nok = chart_from_json(R"({"name": "round", "g11": "4/(1+x^2+y^2)^2", "g12": "0", "g22": "4/(1+x^2+y^2)^2"})");
  CHECK_FALSE(nok.curvature_supplied());
  CHECK_THAT(nok.curvature(Vec2(0.3, 0.1)), WithinAbs(1.0, 1e-5));
  CHECK_THAT(wavefront_length(nok, Vec2(0, 0), 0.7), WithinAbs(2 * M_PI * std::sin(0.7), 1e-5));
  CHECK_THROWS_AS(chart_from_json(R"({"name": "bad", "g11": "1", "g12": "2", "g22": "1"})"), std::invalid_argument);
  CHECK_THROWS_AS(chart_from_json(R"({"name": "bad", "g11": "1"})"), std::invalid_argument);
  CHECK_THROWS_AS(chart_by_name("klein_bottle"), std::invalid_argument);
  CHECK(chart_by_name("torus").period.has_value());
}
