#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bwave {

using Vec2 = Eigen::Vector2d;
using ScalarField = std::function<double(double, double)>;

struct ChartRect {
  double x_min = -1e300, x_max = 1e300;
  double y_min = -1e300, y_max = 1e300;
  bool contains(double x, double y) const { return x >= x_min && x <= x_max && y >= y_min && y <= y_max; }
};

/// d g / dx and d g / dy at a point.
using MetricPartials = std::array<Eigen::Matrix2d, 2>;

/// A Riemannian metric on a rectangle of R^2. Immutable after construction.
class SurfaceChart {
 public:
  SurfaceChart(std::string name, ScalarField g11, ScalarField g12, ScalarField g22, ChartRect rect,
               std::optional<ScalarField> curvature = std::nullopt,
               std::optional<std::function<MetricPartials(double, double)>> partials = std::nullopt);

  const std::string& name() const { return name_; }
  const ChartRect& rect() const { return rect_; }
  bool contains(const Vec2& p) const { return rect_.contains(p.x(), p.y()); }

  Eigen::Matrix2d metric(const Vec2& p) const;
  /// Analytic when supplied, else central differences with step 1e-5.
  MetricPartials metric_partials(const Vec2& p) const;
  /// Supplied K, else the Brioschi formula with central differences (step 1e-4).
  double curvature(const Vec2& p) const;
  double brioschi_curvature(const Vec2& p, double step = 1e-4) const;
  bool curvature_supplied() const { return curvature_.has_value(); }

  /// Fundamental domain [0, px) x [0, py) for closed surface models.
  std::optional<Vec2> period;

 private:
  std::string name_;
  ScalarField g11_, g12_, g22_;
  ChartRect rect_;
  std::optional<ScalarField> curvature_;
  std::optional<std::function<MetricPartials(double, double)>> partials_;
};

SurfaceChart flat_chart();
/// Unit sphere in stereographic coordinates from the south pole: the origin
/// is the north pole and a point at radius rho has colatitude 2 atan(rho).
SurfaceChart sphere_chart();
/// Unit sphere in (colatitude, longitude): g = diag(1, sin^2 x).
SurfaceChart sphere_polar_chart();
/// Upper half plane, g = (dx^2 + dy^2) / y^2, K = -1.
SurfaceChart hyperbolic_chart();
/// Flat unit torus R^2 / Z^2.
SurfaceChart torus_chart();
/// {"name", "g11", "g12", "g22", optional "K", optional "rect": [x0, x1, y0, y1],
///  optional "period": [px, py]} with expression strings (see Expression).
SurfaceChart chart_from_json(const std::string& text);
/// flat | sphere | sphere_polar | hyperbolic | torus, or a path to a JSON chart.
SurfaceChart chart_by_name(const std::string& name);

/// Gamma[k](i, j) = Gamma^k_{ij}. Throws std::out_of_range outside the rectangle.
std::array<Eigen::Matrix2d, 2> christoffel(const SurfaceChart& chart, const Vec2& p);

/// Unit vector in direction theta, measured from the metric-orthonormal
/// frame obtained by Gram-Schmidt on (d/dx, d/dy).
Vec2 unit_direction(const SurfaceChart& chart, const Vec2& p, double theta);

struct GeodesicResult {
  Vec2 position;
  Vec2 velocity;
  double jacobi = 0.0;       // J(t), with J'' + K J = 0, J(0) = 0, J'(0) = 1
  double jacobi_rate = 0.0;  // J'(t)
  double speed_drift = 0.0;  // max |g(v, v) - 1| along the path
};

/// Default step count ceil(t / 1e-3).
int default_steps(double t);

/// RK4 for the geodesic equations with the Jacobi equation co-integrated.
/// Throws ChartExitError (with the exit time) when the path leaves the rectangle.
GeodesicResult geodesic(const SurfaceChart& chart, const Vec2& p, double theta, double t, int steps = 0);
double jacobi_field(const SurfaceChart& chart, const Vec2& p, double theta, double t, int steps = 0);

struct FrontSample {
  double theta = 0.0;
  Vec2 endpoint;
  Vec2 tangent;   // geodesic velocity at the endpoint
  Vec2 normal;    // unit normal, rotated +90 degrees from the tangent
  double jacobi = 0.0;
};

struct WaveFront {
  Vec2 center;
  double radius = 0.0;
  std::vector<FrontSample> samples;  // theta = 2 pi i / n
};

WaveFront wavefront(const SurfaceChart& chart, const Vec2& p, double t, int n_theta, int steps = 0);
/// Trapezoid rule of |J(t, theta)| over uniform theta.
double wavefront_length(const SurfaceChart& chart, const Vec2& p, double t, int n_theta = 64, int steps = 0);

/// (2 |W_h| - |W_2h|) / (2 pi h^3)
double r2d2_curvature(const SurfaceChart& chart, const Vec2& p, double h, int n_theta = 64);
/// 3 (2 pi r - |W_r|) / (pi r^3)
double puiseux_curvature(const SurfaceChart& chart, const Vec2& p, double r, int n_theta = 64);
/// (2 |W_r| - |W_2r|) / (2 pi r^2) with |W_r| = 2 pi r arccos(r / (2R)), for
/// a point on the boundary circle of a disc of radius R. Tends to 1/R.
double r2d2_boundary(double disc_radius, double r);

struct OneForm {
  ScalarField p;  // coefficient of dx
  ScalarField q;  // coefficient of dy
};

struct LineIntegral {
  double value = 0.0;
  /// The front folded (J <= 0 somewhere) or its polyline crosses itself.
  bool self_intersecting = false;
};

/// Integral of P dx + Q dy along W_t(p). The front is parameterized by the
/// launch angle; d x / d theta = J N along each geodesic, so the trapezoid
/// rule in theta is applied to exact tangents.
LineIntegral wavefront_line_integral(const SurfaceChart& chart, const OneForm& f, const Vec2& p, double t,
                                     int n_theta = 64, int steps = 0);

enum class CenterLayout { grid, kronecker };

/// Centers in [0, px) x [0, py): a square grid (n must be a perfect square)
/// or the additive recurrence with the plastic-number (R2) increments.
std::vector<Vec2> cancellation_centers(const Vec2& period, int n, CenterLayout layout);

/// Average of wavefront_line_integral over n centers of a closed surface model.
double global_cancellation(const SurfaceChart& chart, const OneForm& f, double t, int n_centers,
                           CenterLayout layout = CenterLayout::grid, int n_theta = 64);

}  // namespace bwave
