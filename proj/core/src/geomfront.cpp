#include "bwave/geomfront.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bwave/errors.hpp"
#include "bwave/expr.hpp"
#include "json.hpp"

namespace bwave {
namespace {

double clip(double v, double lo, double hi) { return std::max(lo, std::min(hi, v)); }

std::string point_string(const Vec2& p) {
  std::ostringstream os;
  os << "(" << p.x() << ", " << p.y() << ")";
  return os.str();
}

}  // namespace

SurfaceChart::SurfaceChart(std::string name, ScalarField g11, ScalarField g12, ScalarField g22, ChartRect rect,
                           std::optional<ScalarField> curvature,
                           std::optional<std::function<MetricPartials(double, double)>> partials)
    : name_(std::move(name)),
      g11_(std::move(g11)),
      g12_(std::move(g12)),
      g22_(std::move(g22)),
      rect_(rect),
      curvature_(std::move(curvature)),
      partials_(std::move(partials)) {
  if (!(rect_.x_min < rect_.x_max) || !(rect_.y_min < rect_.y_max))
    throw std::invalid_argument("chart rectangle is empty");
  const double x0 = clip(rect_.x_min, -10.0, 10.0), x1 = clip(rect_.x_max, -10.0, 10.0);
  const double y0 = clip(rect_.y_min, -10.0, 10.0), y1 = clip(rect_.y_max, -10.0, 10.0);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const double x = x0 + (x1 - x0) * (0.05 + 0.9 * i / 8.0);
      const double y = y0 + (y1 - y0) * (0.05 + 0.9 * j / 8.0);
      const Eigen::Matrix2d g = metric(Vec2(x, y));
      if (!(g(0, 0) > 0.0) || !(g.determinant() > 0.0))
        throw std::invalid_argument("metric of chart '" + name_ + "' is not positive definite at " +
                                    point_string(Vec2(x, y)));
    }
}

Eigen::Matrix2d SurfaceChart::metric(const Vec2& p) const {
  Eigen::Matrix2d g;
  g(0, 0) = g11_(p.x(), p.y());
  g(0, 1) = g(1, 0) = g12_(p.x(), p.y());
  g(1, 1) = g22_(p.x(), p.y());
  return g;
}

MetricPartials SurfaceChart::metric_partials(const Vec2& p) const {
  if (partials_) return (*partials_)(p.x(), p.y());
  const double h = 1e-5;
  MetricPartials out;
  out[0] = (metric(p + Vec2(h, 0)) - metric(p - Vec2(h, 0))) / (2 * h);
  out[1] = (metric(p + Vec2(0, h)) - metric(p - Vec2(0, h))) / (2 * h);
  return out;
}

double SurfaceChart::curvature(const Vec2& p) const {
  if (curvature_) return (*curvature_)(p.x(), p.y());
  return brioschi_curvature(p);
}

double SurfaceChart::brioschi_curvature(const Vec2& p, double h) const {
  auto g = [&](double dx, double dy) { return metric(p + Vec2(dx, dy)); };
  const Eigen::Matrix2d c = g(0, 0);
  const Eigen::Matrix2d gu = (g(h, 0) - g(-h, 0)) / (2 * h);
  const Eigen::Matrix2d gv = (g(0, h) - g(0, -h)) / (2 * h);
  const Eigen::Matrix2d guu = (g(h, 0) - 2 * c + g(-h, 0)) / (h * h);
  const Eigen::Matrix2d gvv = (g(0, h) - 2 * c + g(0, -h)) / (h * h);
  const Eigen::Matrix2d guv = (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4 * h * h);
  const double e = c(0, 0), f = c(0, 1), gg = c(1, 1);
  const double eu = gu(0, 0), ev = gv(0, 0), fu = gu(0, 1), fv = gv(0, 1), gu_ = gu(1, 1), gv_ = gv(1, 1);
  const double evv = gvv(0, 0), fuv = guv(0, 1), guu_ = guu(1, 1);
  Eigen::Matrix3d a;
  a << -evv / 2 + fuv - guu_ / 2, eu / 2, fu - ev / 2,
       fv - gu_ / 2, e, f,
       gv_ / 2, f, gg;
  Eigen::Matrix3d b;
  b << 0, ev / 2, gu_ / 2,
       ev / 2, e, f,
       gu_ / 2, f, gg;
  const double det = e * gg - f * f;
  return (a.determinant() - b.determinant()) / (det * det);
}

SurfaceChart flat_chart() {
  auto one = [](double, double) { return 1.0; };
  auto zero = [](double, double) { return 0.0; };
  return SurfaceChart("flat", one, zero, one, ChartRect{}, ScalarField(zero),
                      [](double, double) { return MetricPartials{Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero()}; });
}

SurfaceChart sphere_chart() {
  auto lambda = [](double x, double y) {
    const double s = 1.0 + x * x + y * y;
    return 4.0 / (s * s);
  };
  auto zero = [](double, double) { return 0.0; };
  auto partials = [](double x, double y) {
    const double s = 1.0 + x * x + y * y;
    const double d = -16.0 / (s * s * s);
    return MetricPartials{Eigen::Matrix2d::Identity() * d * x, Eigen::Matrix2d::Identity() * d * y};
  };
  return SurfaceChart("sphere", lambda, zero, lambda, ChartRect{-50, 50, -50, 50},
                      ScalarField([](double, double) { return 1.0; }), partials);
}

SurfaceChart sphere_polar_chart() {
  auto one = [](double, double) { return 1.0; };
  auto zero = [](double, double) { return 0.0; };
  auto g22 = [](double x, double) { return std::sin(x) * std::sin(x); };
  auto partials = [](double x, double) {
    Eigen::Matrix2d dx = Eigen::Matrix2d::Zero();
    dx(1, 1) = 2.0 * std::sin(x) * std::cos(x);
    return MetricPartials{dx, Eigen::Matrix2d::Zero()};
  };
  return SurfaceChart("sphere_polar", one, zero, g22, ChartRect{1e-6, M_PI - 1e-6, -1e6, 1e6},
                      ScalarField([](double, double) { return 1.0; }), partials);
}

SurfaceChart hyperbolic_chart() {
  auto lambda = [](double, double y) { return 1.0 / (y * y); };
  auto zero = [](double, double) { return 0.0; };
  auto partials = [](double, double y) {
    return MetricPartials{Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Identity() * (-2.0 / (y * y * y))};
  };
  return SurfaceChart("hyperbolic", lambda, zero, lambda, ChartRect{-1e6, 1e6, 1e-9, 1e6},
                      ScalarField([](double, double) { return -1.0; }), partials);
}

SurfaceChart torus_chart() {
  SurfaceChart t("torus", [](double, double) { return 1.0; }, [](double, double) { return 0.0; },
                 [](double, double) { return 1.0; }, ChartRect{}, ScalarField([](double, double) { return 0.0; }),
                 [](double, double) { return MetricPartials{Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero()}; });
  t.period = Vec2(1.0, 1.0);
  return t;
}

SurfaceChart chart_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("chart JSON: ") + e.what());
  }
  for (const char* key : {"g11", "g12", "g22"})
    if (!j.contains(key) || !j[key].is_string()) throw std::invalid_argument(std::string("chart JSON needs string \"") + key + "\"");
  const Expression g11 = Expression::parse(j["g11"]), g12 = Expression::parse(j["g12"]),
                   g22 = Expression::parse(j["g22"]);
  ChartRect rect;
  if (j.contains("rect")) {
    const auto r = j["rect"].get<std::vector<double>>();
    if (r.size() != 4) throw std::invalid_argument("chart JSON \"rect\" must be [x0, x1, y0, y1]");
    rect = ChartRect{r[0], r[1], r[2], r[3]};
  }
  std::optional<ScalarField> curvature;
  if (j.contains("K")) curvature = ScalarField(Expression::parse(j["K"]));
  SurfaceChart chart(j.value("name", std::string("custom")), g11, g12, g22, rect, curvature);
  if (j.contains("period")) {
    const auto p = j["period"].get<std::vector<double>>();
    if (p.size() != 2 || !(p[0] > 0) || !(p[1] > 0)) throw std::invalid_argument("chart JSON \"period\" must be [px, py] > 0");
    chart.period = Vec2(p[0], p[1]);
  }
  return chart;
}

SurfaceChart chart_by_name(const std::string& name) {
  if (name == "flat") return flat_chart();
  if (name == "sphere") return sphere_chart();
  if (name == "sphere_polar") return sphere_polar_chart();
  if (name == "hyperbolic") return hyperbolic_chart();
  if (name == "torus") return torus_chart();
  if (std::filesystem::exists(name)) {
    std::ifstream in(name);
    std::stringstream ss;
    ss << in.rdbuf();
    return chart_from_json(ss.str());
  }
  throw std::invalid_argument("unknown chart '" + name + "' (flat, sphere, sphere_polar, hyperbolic, torus or a JSON file)");
}

std::array<Eigen::Matrix2d, 2> christoffel(const SurfaceChart& chart, const Vec2& p) {
  if (!chart.contains(p)) throw std::out_of_range("point " + point_string(p) + " outside chart '" + chart.name() + "'");
  const Eigen::Matrix2d ginv = chart.metric(p).inverse();
  const MetricPartials dg = chart.metric_partials(p);
  std::array<Eigen::Matrix2d, 2> gamma;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l) s += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
      }
  return gamma;
}

Vec2 unit_direction(const SurfaceChart& chart, const Vec2& p, double theta) {
  const Eigen::Matrix2d g = chart.metric(p);
  const Vec2 e1 = Vec2(1, 0) / std::sqrt(g(0, 0));
  Vec2 e2 = Vec2(0, 1) - (Vec2(0, 1).dot(g * e1)) * e1;
  e2 /= std::sqrt(e2.dot(g * e2));
  return std::cos(theta) * e1 + std::sin(theta) * e2;
}

int default_steps(double t) { return std::max(1, static_cast<int>(std::ceil(std::abs(t) / 1e-3))); }

namespace {

using State = Eigen::Matrix<double, 6, 1>;

State rhs(const SurfaceChart& chart, const State& s) {
  const Vec2 x(s(0), s(1)), v(s(2), s(3));
  const auto gamma = christoffel(chart, x);
  State d;
  d(0) = v(0);
  d(1) = v(1);
  d(2) = -v.dot(gamma[0] * v);
  d(3) = -v.dot(gamma[1] * v);
  d(4) = s(5);
  d(5) = -chart.curvature(x) * s(4);
  return d;
}

}  // namespace

GeodesicResult geodesic(const SurfaceChart& chart, const Vec2& p, double theta, double t, int steps) {
  if (!chart.contains(p)) throw std::out_of_range("start point " + point_string(p) + " outside chart '" + chart.name() + "'");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("geodesic time must be finite and >= 0");
  if (steps <= 0) steps = default_steps(t);
  const Vec2 v0 = unit_direction(chart, p, theta);
  State s;
  s << p.x(), p.y(), v0.x(), v0.y(), 0.0, 1.0;
  const double h = t / steps;
  GeodesicResult out;
  for (int i = 0; i < steps; ++i) {
    try {
      const State k1 = rhs(chart, s);
      const State k2 = rhs(chart, s + 0.5 * h * k1);
      const State k3 = rhs(chart, s + 0.5 * h * k2);
      const State k4 = rhs(chart, s + h * k3);
      s += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    } catch (const std::out_of_range&) {
      throw ChartExitError("geodesic left chart '" + chart.name() + "' near t = " + std::to_string(i * h), i * h);
    }
    if (!chart.contains(Vec2(s(0), s(1))) || !s.allFinite())
      throw ChartExitError("geodesic left chart '" + chart.name() + "' near t = " + std::to_string((i + 1) * h),
                           (i + 1) * h);
    const Vec2 v(s(2), s(3));
    out.speed_drift = std::max(out.speed_drift, std::abs(v.dot(chart.metric(Vec2(s(0), s(1))) * v) - 1.0));
  }
  out.position = Vec2(s(0), s(1));
  out.velocity = Vec2(s(2), s(3));
  out.jacobi = s(4);
  out.jacobi_rate = s(5);
  return out;
}

double jacobi_field(const SurfaceChart& chart, const Vec2& p, double theta, double t, int steps) {
  return geodesic(chart, p, theta, t, steps).jacobi;
}

WaveFront wavefront(const SurfaceChart& chart, const Vec2& p, double t, int n_theta, int steps) {
  if (n_theta < 3) throw std::invalid_argument("wave front needs at least 3 angles");
  WaveFront front;
  front.center = p;
  front.radius = t;
  for (int i = 0; i < n_theta; ++i) {
    FrontSample s;
    s.theta = 2.0 * M_PI * i / n_theta;
    const GeodesicResult g = geodesic(chart, p, s.theta, t, steps);
    s.endpoint = g.position;
    s.tangent = g.velocity;
    s.jacobi = g.jacobi;
    // N^i = eps^{ij} g_{jk} v^k / sqrt(det g), eps^{12} = -1
    const Eigen::Matrix2d gm = chart.metric(g.position);
    const Vec2 lowered = gm * g.velocity;
    s.normal = Vec2(-lowered(1), lowered(0)) / std::sqrt(gm.determinant());
    front.samples.push_back(s);
  }
  return front;
}

double wavefront_length(const SurfaceChart& chart, const Vec2& p, double t, int n_theta, int steps) {
  const WaveFront front = wavefront(chart, p, t, n_theta, steps);
  double sum = 0.0;
  for (const auto& s : front.samples) sum += std::abs(s.jacobi);
  return sum * 2.0 * M_PI / n_theta;
}

double r2d2_curvature(const SurfaceChart& chart, const Vec2& p, double h, int n_theta) {
  if (!(h > 0.0)) throw std::invalid_argument("R2-D2 radius must be positive");
  const double w1 = wavefront_length(chart, p, h, n_theta);
  const double w2 = wavefront_length(chart, p, 2 * h, n_theta);
  return (2 * w1 - w2) / (2 * M_PI * h * h * h);
}

double puiseux_curvature(const SurfaceChart& chart, const Vec2& p, double r, int n_theta) {
  if (!(r > 0.0)) throw std::invalid_argument("Puiseux radius must be positive");
  return 3.0 * (2 * M_PI * r - wavefront_length(chart, p, r, n_theta)) / (M_PI * r * r * r);
}

double r2d2_boundary(double disc_radius, double r) {
  if (!(disc_radius > 0.0) || !(r > 0.0)) throw std::invalid_argument("boundary R2-D2 needs R > 0 and r > 0");
  if (!(2 * r < 2 * disc_radius)) throw std::invalid_argument("boundary R2-D2 needs 2r < 2R");
  auto length = [&](double s) { return 2 * M_PI * s * std::acos(s / (2 * disc_radius)); };
  return (2 * length(r) - length(2 * r)) / (2 * M_PI * r * r);
}

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

LineIntegral wavefront_line_integral(const SurfaceChart& chart, const OneForm& f, const Vec2& p, double t,
                                     int n_theta, int steps) {
  const WaveFront front = wavefront(chart, p, t, n_theta, steps);
  LineIntegral out;
  double sum = 0.0;
  for (const auto& s : front.samples) {
    const Vec2 dx = s.jacobi * s.normal;
    sum += f.p(s.endpoint.x(), s.endpoint.y()) * dx.x() + f.q(s.endpoint.x(), s.endpoint.y()) * dx.y();
    if (!(s.jacobi > 0.0)) out.self_intersecting = true;
  }
  out.value = sum * 2.0 * M_PI / n_theta;
  const auto& sm = front.samples;
  const std::size_t n = sm.size();
  for (std::size_t i = 0; i < n && !out.self_intersecting; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(sm[i].endpoint, sm[(i + 1) % n].endpoint, sm[j].endpoint, sm[(j + 1) % n].endpoint)) {
        out.self_intersecting = true;
        break;
      }
    }
  return out;
}

std::vector<Vec2> cancellation_centers(const Vec2& period, int n, CenterLayout layout) {
  if (n < 1) throw std::invalid_argument("need at least one center");
  std::vector<Vec2> out;
  if (layout == CenterLayout::grid) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (side * side != n) throw std::invalid_argument("grid layout needs a perfect-square center count");
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) out.emplace_back(period.x() * i / side, period.y() * j / side);
    return out;
  }
  // Plastic number g: g^3 = g + 1.
  const double g = 1.32471795724474602596;
  const double a1 = 1.0 / g, a2 = 1.0 / (g * g);
  for (int i = 0; i < n; ++i) {
    const double u = std::fmod(0.5 + a1 * (i + 1), 1.0), v = std::fmod(0.5 + a2 * (i + 1), 1.0);
    out.emplace_back(period.x() * u, period.y() * v);
  }
  return out;
}

double global_cancellation(const SurfaceChart& chart, const OneForm& f, double t, int n_centers, CenterLayout layout,
                           int n_theta) {
  if (!chart.period)
    throw std::invalid_argument("global cancellation needs a closed surface model (a chart with a period)");
  double sum = 0.0;
  for (const Vec2& c : cancellation_centers(*chart.period, n_centers, layout))
    sum += wavefront_line_integral(chart, f, c, t, n_theta).value;
  return sum / n_centers;
}

}  // namespace bwave
