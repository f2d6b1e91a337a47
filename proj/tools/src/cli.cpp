#include "bwave/tools/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bwave/besselfn.hpp"
#include "bwave/errors.hpp"
#include "bwave/expr.hpp"
#include "bwave/geomfront.hpp"
#include "bwave/huygens.hpp"
#include "bwave/locality_probe.hpp"
#include "bwave/simplicial.hpp"
#include "bwave/specops.hpp"
#include "bwave/tools/plot.hpp"
#include "bwave/tools/report.hpp"
#include "bwave/tools/verify.hpp"
#include "bwave/waveforms.hpp"

namespace bwave::tools {
namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "csv";
  bool plot = false;
  std::string config;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Context {
 public:
  Context(std::string sub, const Common& c, std::ostream& out, std::ostream& err)
      : sub_(std::move(sub)), c_(c), out_(out), err_(err) {}

  const Common& common() const { return c_; }
  bool json() const { return c_.format == "json"; }
  std::ostream& err() { return err_; }

  void param(const std::string& key, const std::string& value) { params_.emplace_back(key, value); }
  void param(const std::string& key, double value) { param(key, format_double(value)); }
  void param(const std::string& key, int value) { param(key, std::to_string(value)); }

  std::string csv_header() const {
    std::ostringstream os;
    os << "# bwave " << sub_ << "\n# params:";
    for (const auto& [k, v] : params_) os << " " << k << "=" << v;
    os << "\n# seed: " << c_.seed << "\n";
    return os.str();
  }

  void write(const std::string& text) {
    if (c_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(c_.out);
    if (!f) throw UsageError("cannot open output file '" + c_.out + "'");
    f << text;
  }

  void plot(const std::string& svg) {
    if (!c_.plot) return;
    std::string path;
    if (c_.out.empty()) {
      path = "bwave-" + sub_ + ".svg";
    } else {
      path = c_.out;
      const auto dot = path.find_last_of('.');
      const auto slash = path.find_last_of('/');
      if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) path = path.substr(0, dot);
      path += ".svg";
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open plot file '" + path + "'");
    f << svg;
  }

 private:
  std::string sub_;
  Common c_;
  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::pair<std::string, std::string>> params_;
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_double(v[i]);
  return s;
}

std::string row(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_flag("--plot", c.plot, "also write an SVG plot next to the output");
  sub->add_option("--config", c.config, "JSON file with the same keys as the flags");
}

// Expands --config <file.json> into flags placed right after the subcommand,
// so explicit flags given later on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    else continue;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    Json cfg;
    try {
      cfg = Json::parse(in);
    } catch (const Json::exception& e) {
      throw UsageError("config file '" + path + "': " + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
    std::vector<std::string> extra;
    for (const auto& [key, value] : cfg.items()) {
      if (value.is_boolean()) {
        if (value.get<bool>()) extra.push_back("--" + key);
      } else if (value.is_array()) {
        extra.push_back("--" + key);
        for (const auto& v : value) extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      } else {
        extra.push_back("--" + key);
        extra.push_back(value.is_string() ? value.get<std::string>() : value.dump());
      }
    }
    const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
    const auto pos = sub == args.end() ? args.begin() : sub + 1;
    args.insert(pos, extra.begin(), extra.end());
    return args;
  }
  return args;
}

SpectralDomain make_spectral_domain(const std::string& kind, int q, int m, const std::string& complex) {
  if (kind == "circle") return build_circle_domain(m);
  if (kind == "torus") return build_torus_domain(q, m);
  if (kind == "simplicial") {
    if (complex.empty() || complex == "octahedron") return build_simplicial_domain(octahedron_surface());
    return build_simplicial_domain(SimplicialComplex::from_json_file(complex));
  }
  throw UsageError("unknown domain '" + kind + "' (circle, torus, simplicial)");
}

Vec2 default_center(const std::string& chart) {
  if (chart == "hyperbolic") return Vec2(0, 1);
  if (chart == "sphere_polar") return Vec2(M_PI / 2, 0);
  return Vec2(0, 0);
}

double known_curvature(const std::string& chart) {
  if (chart == "sphere" || chart == "sphere_polar") return 1.0;
  if (chart == "hyperbolic") return -1.0;
  if (chart == "flat" || chart == "torus") return 0.0;
  return NAN;
}

// ---- subcommands -----------------------------------------------------------

struct BesselArgs {
  int n = 3;
  std::vector<double> r;
  double r_min = 0.0, r_max = 10.0;
  int points = 101;
  bool check = false;
};

int cmd_bessel(Context& ctx, const BesselArgs& a) {
  if (a.n < 1) throw UsageError("--n must be >= 1");
  std::vector<double> rs = a.r;
  if (rs.empty()) {
    if (a.points < 2 || !(a.r_max > a.r_min) || a.r_min < 0) throw UsageError("need 0 <= r-min < r-max and points >= 2");
    for (int i = 0; i < a.points; ++i) rs.push_back(a.r_min + (a.r_max - a.r_min) * i / (a.points - 1));
  }
  ctx.param("n", a.n);
  ctx.param("r", join(rs));
  Series phi_s{"phi", {}, {}}, psi_s{"psi", {}, {}};
  std::string text = ctx.json() ? "" : ctx.csv_header() + row({"n", "r", "phi", "psi", "phi_derivative", "ode_residual"});
  Json rows = Json::array();
  double worst = 0.0;
  for (double r : rs) {
    const double ode = r > 0 ? ode_residual(a.n, r) : NAN;
    if (r > 0) worst = std::max(worst, std::abs(ode));
    const double p = phi(a.n, r), s = psi(a.n, r), d = phi_derivative(a.n, r);
    phi_s.x.push_back(r);
    phi_s.y.push_back(p);
    psi_s.x.push_back(r);
    psi_s.y.push_back(s);
    if (ctx.json())
      rows.push_back({{"n", a.n}, {"r", r}, {"phi", p}, {"psi", s}, {"phi_derivative", d}, {"ode_residual", ode}});
    else
      text += row({std::to_string(a.n), format_double(r), format_double(p), format_double(s), format_double(d),
                   format_double(ode)});
  }
  ctx.write(ctx.json() ? rows.dump(2) + "\n" : text);
  ctx.plot(svg_plot("Bessel profile n=" + std::to_string(a.n), "r", "value", {phi_s, psi_s}));
  if (a.check) {
    SuiteResult s{"bessel-check", {CaseResult{"max |ode residual|", worst < 1e-9, worst, 1e-9, {}}}, 0.0};
    if (!s.pass()) {
      ctx.err() << report_json("bessel", {s});
      return 1;
    }
  }
  return 0;
}

struct SpectralArgs {
  std::string domain = "circle";
  int q = 2;
  int max_freq = 4;
  std::string complex;
  std::string mode = "betti";
  std::vector<double> t{1.0};
  std::optional<double> tol;
  std::optional<int> bessel_q;
  std::vector<int> linear;
  std::vector<double> shift;
  double h = 0.0;
  int steps = 1000;
};

int cmd_spectral(Context& ctx, const SpectralArgs& a) {
  const SpectralDomain dom = make_spectral_domain(a.domain, a.q, a.max_freq, a.complex);
  ctx.param("domain", a.domain);
  if (a.domain == "torus") ctx.param("q", a.q);
  if (a.domain != "simplicial") ctx.param("max_freq", a.max_freq);
  else ctx.param("complex", a.complex.empty() ? std::string("octahedron") : a.complex);
  ctx.param("mode", a.mode);
  if (a.bessel_q) ctx.param("bessel_q", *a.bessel_q);

  if (a.mode == "spectrum") {
    std::optional<double> t;
    if (a.t.size() == 1 && a.t[0] != 0.0 && ctx.json()) t = a.t[0];
    if (ctx.json()) {
      ctx.write(spectrum_json(dom, t, a.bessel_q) + "\n");
      return 0;
    }
    std::string text = ctx.csv_header() + row({"degree", "index", "eigenvalue"});
    std::vector<Series> series;
    for (int k = 0; k <= dom.top_degree(); ++k) {
      const auto values = laplacian_spectrum(dom, k);
      Series s{"degree " + std::to_string(k), {}, {}};
      for (std::size_t i = 0; i < values.size(); ++i) {
        text += row({std::to_string(k), std::to_string(i), format_double(values[i])});
        s.x.push_back(static_cast<double>(i));
        s.y.push_back(values[i]);
      }
      series.push_back(s);
    }
    ctx.write(text);
    ctx.plot(svg_plot("Hodge Laplacian spectrum", "index", "eigenvalue", series));
    return 0;
  }
  if (a.mode == "betti") {
    ctx.param("t", join(a.t));
    if (a.tol) ctx.param("tol", *a.tol);
    std::vector<std::string> head{"t"};
    for (int k = 0; k <= dom.top_degree(); ++k) head.push_back("b" + std::to_string(k));
    std::string text = ctx.csv_header() + row(head);
    Json rows = Json::array();
    for (double t : a.t) {
      const auto b = t == 0.0 ? harmonic_betti_numbers(dom, a.tol) : betti_numbers(dom, t, a.tol, a.bessel_q);
      std::vector<std::string> cells{format_double(t)};
      for (int v : b) cells.push_back(std::to_string(v));
      text += row(cells);
      rows.push_back({{"t", t}, {"betti", b}});
    }
    ctx.write(ctx.json() ? rows.dump(2) + "\n" : text);
    return 0;
  }
  if (a.mode == "commutator") {
    const FourierLayout* layout = dom.fourier_layout();
    if (!layout) throw UsageError("commutator mode needs a circle or torus domain");
    const int q = layout->q;
    std::vector<int> linear = a.linear;
    std::vector<double> shift = a.shift;
    if (linear.empty())
      for (int i = 0; i < q * q; ++i) linear.push_back(i / q == i % q ? 1 : 0);
    if (shift.empty()) shift.assign(static_cast<std::size_t>(q), 1.0 / 3.0);
    std::string lin;
    for (std::size_t i = 0; i < linear.size(); ++i) lin += (i ? ";" : "") + std::to_string(linear[i]);
    ctx.param("linear", lin);
    ctx.param("shift", join(shift));
    const SparseMatrix u = torus_isometry(dom, linear, shift);
    std::string text = ctx.csv_header() + row({"t", "commutator_norm"});
    Json rows = Json::array();
    for (double t : a.t) {
      const double c = symmetry_commutator(dom, u, t, a.bessel_q);
      text += row({format_double(t), format_double(c)});
      rows.push_back({{"t", t}, {"commutator_norm", c}});
    }
    ctx.write(ctx.json() ? rows.dump(2) + "\n" : text);
    return 0;
  }
  if (a.mode == "orbit") {
    const FourierLayout* layout = dom.fourier_layout();
    double h = a.h;
    if (h <= 0.0) {
      if (!layout || layout->q != 1) throw UsageError("orbit mode needs --h unless the domain is the circle");
      h = std::asin(0.9) / (2.0 * M_PI * a.max_freq);
    }
    ctx.param("h", h);
    ctx.param("steps", a.steps);
    const DiscreteWaveMap map(dom, h, a.bessel_q);
    SplitMix64 rng(ctx.common().seed);
    WaveState state{Eigen::VectorXd(dom.dimension()), Eigen::VectorXd(dom.dimension())};
    for (Index i = 0; i < dom.dimension(); ++i) {
      state.u(i) = rng.normal();
      state.v(i) = rng.normal();
    }
    const double bound = map.orbit_norm_squared_bound(state);
    std::string text = ctx.csv_header() + "# operator_norm: " + format_double(map.operator_norm()) + "\n" +
                       row({"iteration", "norm_squared", "bound"});
    Json rows = Json::array();
    Series ns{"|(u,v)|^2", {}, {}}, bs{"ellipse bound", {}, {}};
    int violations = 0;
    for (int it = 0; it <= a.steps; ++it) {
      const double n2 = state.u.squaredNorm() + state.v.squaredNorm();
      if (n2 > bound * (1.0 + 1e-12)) ++violations;
      text += row({std::to_string(it), format_double(n2), format_double(bound)});
      rows.push_back({{"iteration", it}, {"norm_squared", n2}, {"bound", bound}});
      ns.x.push_back(it);
      ns.y.push_back(n2);
      bs.x.push_back(it);
      bs.y.push_back(bound);
      if (it < a.steps) state = map.step(state);
    }
    ctx.write(ctx.json() ? rows.dump(2) + "\n" : text);
    ctx.plot(svg_plot("Discrete wave map orbit", "iteration", "norm squared", {ns, bs}));
    if (violations) {
      SuiteResult s{"orbit", {CaseResult{"ellipse-bound violations", false, double(violations), 0.0, {}}}, 0.0};
      ctx.err() << report_json("spectral-orbit", {s});
      return 1;
    }
    return 0;
  }
  throw UsageError("unknown spectral mode '" + a.mode + "' (spectrum, betti, commutator, orbit)");
}

struct WaveArgs {
  std::string domain = "torus";
  int q = 2;
  std::optional<int> bessel_q;
  int max_freq = 4;
  std::string kind = "velocity";
  double t_min = 0.5, t_max = 2.0;
  int points = 16;
  double dt = 1e-3;
  int degree = 0;
  double decay = 2.0;
  int modes = 4;
};

int cmd_wave(Context& ctx, const WaveArgs& a) {
  const SpectralDomain dom = a.domain == "circle" ? build_circle_domain(a.max_freq) : a.domain == "torus"
                                                                                         ? build_torus_domain(a.q, a.max_freq)
                                                                                         : throw UsageError("wave needs --domain circle or torus");
  const int bq = a.bessel_q.value_or(dom.ambient_dimension());
  if (a.points < 1 || a.t_max < a.t_min) throw UsageError("need points >= 1 and t-min <= t-max");
  ctx.param("domain", a.domain);
  ctx.param("q", dom.ambient_dimension());
  ctx.param("bessel_q", bq);
  ctx.param("max_freq", a.max_freq);
  ctx.param("kind", a.kind);
  ctx.param("degree", a.degree);
  ctx.param("t_min", a.t_min);
  ctx.param("t_max", a.t_max);
  ctx.param("points", a.points);
  ctx.param("dt", a.dt);
  ctx.param("decay", a.decay);
  SplitMix64 rng(ctx.common().seed);
  const Cochain f = random_smooth_cochain(dom, a.degree, a.decay, rng);
  WaveSolution sol;
  if (a.kind == "velocity") sol = make_deformed_velocity(dom, bq, f);
  else if (a.kind == "position") sol = make_deformed_position(dom, bq, f);
  else if (a.kind == "classical") {
    const Cochain df = dom.extract(dom.apply_d(dom.embed(f)), a.degree + 1);
    sol = make_classical(dom, dom.zero_cochain(a.degree + 1), df);
  } else throw UsageError("unknown wave kind '" + a.kind + "' (classical, velocity, position)");

  const FourierLayout& layout = *dom.fourier_layout();
  const int modes = std::min<int>(a.modes, static_cast<int>(layout.modes.size()));
  std::vector<std::string> head{"t", "residual", "norm"};
  for (int m = 0; m < modes; ++m) head.push_back("amp_mode" + std::to_string(m));
  std::string text = ctx.csv_header() + row(head);
  Json rows = Json::array();
  Series rs{"residual", {}, {}}, ns{"norm", {}, {}};
  const int deg = sol.degree();
  const std::size_t nsub = layout.subsets[static_cast<std::size_t>(deg)].size();
  for (int i = 0; i < a.points; ++i) {
    const double t = a.points == 1 ? a.t_min : a.t_min + (a.t_max - a.t_min) * i / (a.points - 1);
    const Cochain u = sol.at(t);
    const double res = residual_deformed(sol, t, a.dt);
    std::vector<std::string> cells{format_double(t), format_double(res), format_double(u.coefficients.norm())};
    std::vector<double> amps;
    for (int m = 0; m < modes; ++m) {
      double s2 = 0.0;
      for (int trig = 0; trig < (m == 0 ? 1 : 2); ++trig)
        for (std::size_t p = 0; p < nsub; ++p) {
          const double c = u.coefficients(layout.index(deg, static_cast<std::size_t>(m), trig, p));
          s2 += c * c;
        }
      amps.push_back(std::sqrt(s2));
      cells.push_back(format_double(amps.back()));
    }
    text += row(cells);
    rows.push_back({{"t", t}, {"residual", res}, {"norm", u.coefficients.norm()}, {"amplitudes", amps}});
    rs.x.push_back(t);
    rs.y.push_back(res);
    ns.x.push_back(t);
    ns.y.push_back(u.coefficients.norm());
  }
  ctx.write(ctx.json() ? rows.dump(2) + "\n" : text);
  ctx.plot(svg_plot(std::string("Wave solution (") + to_string(sol.kind) + ")", "t", "value", {rs, ns}));
  return 0;
}

struct PizzettiArgs {
  int q = 0;
  int count = 200;
  int degree = 8;
};

int cmd_pizzetti(Context& ctx, const PizzettiArgs& a) {
  if (a.q < 0 || a.q > 8 || a.count < 1 || a.degree < 0) throw UsageError("need 0 <= q <= 8, count >= 1, degree >= 0");
  ctx.param("q", a.q);
  ctx.param("count", a.count);
  ctx.param("degree", a.degree);
  SplitMix64 rng(ctx.common().seed);
  std::string text = ctx.csv_header() + row({"index", "q", "terms", "ball_match", "sphere_match"});
  SuiteResult suite{"pizzetti", {}, 0.0};
  int bad = 0;
  for (int i = 0; i < a.count; ++i) {
    const int q = a.q == 0 ? 1 + i % 3 : a.q;
    const MultiPoly g = random_polynomial(q, a.degree, 6, rng);
    const bool ball = pizzetti_ball(g) == ball_average_exact(g);
    const bool sphere = pizzetti_sphere(g) == sphere_average_exact(g);
    bad += !ball + !sphere;
    text += row({std::to_string(i), std::to_string(q), std::to_string(g.terms().size()), ball ? "1" : "0",
                 sphere ? "1" : "0"});
    suite.cases.push_back(CaseResult{"polynomial " + std::to_string(i) + " (q=" + std::to_string(q) + ")", ball && sphere,
                                     double(!ball + !sphere), 0.0, g.to_string()});
  }
  ctx.write(ctx.json() ? report_json("pizzetti", {suite}) : text);
  if (bad) {
    SuiteResult failures{"pizzetti", {}, 0.0};
    for (const auto& c : suite.cases)
      if (!c.pass) failures.cases.push_back(c);
    ctx.err() << report_json("pizzetti", {failures});
    return 1;
  }
  return 0;
}

int cmd_polarize(Context& ctx, const std::vector<int>& exponents) {
  std::string e;
  for (std::size_t i = 0; i < exponents.size(); ++i) e += (i ? ";" : "") + std::to_string(exponents[i]);
  ctx.param("exponents", e);
  const PolarizationExpansion p = polarization_expand(exponents);
  const bool ok = p.expand() == p.target();
  std::ostringstream pre;
  pre << p.prefactor;
  if (ctx.json()) {
    Json terms = Json::array();
    for (const auto& t : p.terms) terms.push_back({{"sign", t.sign}, {"coefficients", t.coefficients}, {"power", t.power}});
    Json out{{"exponents", exponents}, {"prefactor", pre.str()}, {"verified", ok}, {"terms", terms}};
    ctx.write(out.dump(2) + "\n");
  } else {
    std::string text = ctx.csv_header() + "# target: " + p.target().to_string() + "\n# prefactor: " + pre.str() +
                       "\n# verified: " + (ok ? "true" : "false") + "\n";
    std::vector<std::string> head{"sign"};
    for (std::size_t v = 0; v < exponents.size(); ++v) head.push_back("c" + std::to_string(v));
    head.push_back("power");
    text += row(head);
    for (const auto& t : p.terms) {
      std::vector<std::string> cells{std::to_string(t.sign)};
      for (int c : t.coefficients) cells.push_back(std::to_string(c));
      cells.push_back(std::to_string(t.power));
      text += row(cells);
    }
    ctx.write(text);
  }
  if (!ok) {
    SuiteResult s{"polarize", {CaseResult{"expansion equals monomial", false, 1.0, 0.0, {}}}, 0.0};
    ctx.err() << report_json("polarize", {s});
    return 1;
  }
  return 0;
}

int cmd_probe(Context& ctx, const LocalityProbeConfig& cfg) {
  ctx.param("q", cfg.q);
  ctx.param("max_freq", cfg.max_frequency);
  ctx.param("sigma", cfg.sigma);
  ctx.param("t", cfg.t);
  ctx.param("w", cfg.annulus);
  ctx.param("grid", cfg.grid);
  ctx.param("bins", cfg.bins);
  ctx.param("tail_limit", cfg.tail_limit);
  const LocalityProbeResult r = locality_probe(cfg);
  if (!r.resolved) throw PreconditionError(r.reason, r.spectral_tail);
  if (ctx.json()) {
    Json bins = Json::array();
    for (const auto& b : r.bins)
      bins.push_back({{"r_lo", b.r_lo}, {"r_hi", b.r_hi}, {"deformed", b.deformed}, {"classical", b.classical}});
    Json out{{"spectral_tail", r.spectral_tail},
             {"deformed_leakage", r.deformed_leakage},
             {"classical_leakage", r.classical_leakage},
             {"bins", bins}};
    ctx.write(out.dump(2) + "\n");
  } else {
    std::string text = ctx.csv_header() + "# spectral_tail: " + format_double(r.spectral_tail) +
                       "\n# deformed_leakage: " + format_double(r.deformed_leakage) +
                       "\n# classical_leakage: " + format_double(r.classical_leakage) + "\n" +
                       row({"r_lo", "r_hi", "deformed", "classical"});
    for (const auto& b : r.bins)
      text += row({format_double(b.r_lo), format_double(b.r_hi), format_double(b.deformed), format_double(b.classical)});
    ctx.write(text);
  }
  Series d{"deformed", {}, {}}, c{"classical", {}, {}};
  for (const auto& b : r.bins) {
    const double mid = 0.5 * (b.r_lo + b.r_hi);
    d.x.push_back(mid);
    d.y.push_back(b.deformed);
    c.x.push_back(mid);
    c.y.push_back(b.classical);
  }
  ctx.plot(svg_plot("Radial L2 mass of d_t f and t sinc(tD) df", "torus distance", "mass fraction", {d, c}));
  return 0;
}

struct GeometryArgs {
  std::string chart = "sphere";
  std::vector<double> h{0.1};
  std::optional<double> px, py;
  int ntheta = 64;
  std::optional<double> boundary_radius;
  double t = 1.0;
  int steps = 0;
  std::string p_expr = "-y", q_expr = "x";
};

Vec2 center_of(const GeometryArgs& a) {
  Vec2 c = default_center(a.chart);
  if (a.px) c.x() = *a.px;
  if (a.py) c.y() = *a.py;
  return c;
}

int cmd_curvature(Context& ctx, const GeometryArgs& a) {
  const SurfaceChart chart = chart_by_name(a.chart);
  const Vec2 c = center_of(a);
  ctx.param("chart", a.chart);
  ctx.param("center", join({c.x(), c.y()}));
  ctx.param("h", join(a.h));
  ctx.param("ntheta", a.ntheta);
  if (a.boundary_radius) ctx.param("boundary_radius", *a.boundary_radius);
  const double exact_k = known_curvature(a.chart);
  std::vector<std::string> head{"h", "r2d2", "puiseux", "exact"};
  if (a.boundary_radius) head.push_back("boundary_r2d2");
  std::string text = ctx.csv_header() + row(head);
  Json rows = Json::array();
  Series rs{"R2-D2", {}, {}}, ps{"Puiseux", {}, {}};
  for (double h : a.h) {
    const double k2 = r2d2_curvature(chart, c, h, a.ntheta);
    const double kp = puiseux_curvature(chart, c, h, a.ntheta);
    std::vector<std::string> cells{format_double(h), format_double(k2), format_double(kp), format_double(exact_k)};
    Json item{{"h", h}, {"r2d2", k2}, {"puiseux", kp}, {"exact", exact_k}};
    if (a.boundary_radius) {
      const double kb = r2d2_boundary(*a.boundary_radius, h);
      cells.push_back(format_double(kb));
      item["boundary_r2d2"] = kb;
    }
    text += row(cells);
    rows.push_back(item);
    rs.x.push_back(h);
    rs.y.push_back(k2);
    ps.x.push_back(h);
    ps.y.push_back(kp);
  }
  ctx.write(ctx.json() ? rows.dump(2) + "\n" : text);
  ctx.plot(svg_plot("Curvature estimates on " + a.chart, "h", "K", {rs, ps}));
  return 0;
}

int cmd_front(Context& ctx, const GeometryArgs& a) {
  const SurfaceChart chart = chart_by_name(a.chart);
  const Vec2 c = center_of(a);
  const Expression pe = Expression::parse(a.p_expr), qe = Expression::parse(a.q_expr);
  ctx.param("chart", a.chart);
  ctx.param("center", join({c.x(), c.y()}));
  ctx.param("t", a.t);
  ctx.param("ntheta", a.ntheta);
  ctx.param("P", a.p_expr);
  ctx.param("Q", a.q_expr);
  const WaveFront front = wavefront(chart, c, a.t, a.ntheta, a.steps);
  const double length = wavefront_length(chart, c, a.t, a.ntheta, a.steps);
  const LineIntegral li = wavefront_line_integral(chart, OneForm{pe, qe}, c, a.t, a.ntheta, a.steps);
  Series poly{"W_t", {}, {}};
  for (const auto& s : front.samples) {
    poly.x.push_back(s.endpoint.x());
    poly.y.push_back(s.endpoint.y());
  }
  if (!front.samples.empty()) {
    poly.x.push_back(front.samples.front().endpoint.x());
    poly.y.push_back(front.samples.front().endpoint.y());
  }
  if (ctx.json()) {
    Json samples = Json::array();
    for (const auto& s : front.samples)
      samples.push_back({{"theta", s.theta}, {"x", s.endpoint.x()}, {"y", s.endpoint.y()}, {"jacobi", s.jacobi}});
    Json out{{"length", length},
             {"line_integral", li.value},
             {"self_intersecting", li.self_intersecting},
             {"samples", samples}};
    ctx.write(out.dump(2) + "\n");
  } else {
    std::string text = ctx.csv_header() + "# length: " + format_double(length) +
                       "\n# line_integral: " + format_double(li.value) +
                       "\n# self_intersecting: " + (li.self_intersecting ? "true" : "false") + "\n" +
                       row({"theta", "x", "y", "jacobi"});
    for (const auto& s : front.samples)
      text += row({format_double(s.theta), format_double(s.endpoint.x()), format_double(s.endpoint.y()),
                   format_double(s.jacobi)});
    ctx.write(text);
  }
  if (li.self_intersecting)
    ctx.err() << "warning: the wave front folds or crosses itself (t beyond the injectivity radius)\n";
  ctx.plot(svg_plot("Wave front on " + a.chart, "x", "y", {poly}));
  return 0;
}

struct VerifyArgs {
  bool quick = false;
  std::vector<int> only;
};

int cmd_verify(Context& ctx, const VerifyArgs& a) {
  ctx.param("quick", a.quick ? "true" : "false");
  VerifyOptions o;
  o.seed = ctx.common().seed;
  o.quick = a.quick;
  std::vector<SuiteResult> results;
  for (const auto& c : criteria())
    if (a.only.empty() || std::find(a.only.begin(), a.only.end(), c.number) != a.only.end()) results.push_back(c.run(o));
  if (results.empty()) throw UsageError("--only selected no criteria (1..11)");
  bool ok = true;
  for (const auto& s : results) ok = ok && s.pass();
  if (ctx.json()) {
    ctx.write(report_json("verify-all", results));
  } else {
    std::string text = ctx.csv_header() + row({"suite", "case", "status", "measured", "bound"});
    for (const auto& s : results)
      for (const auto& c : s.cases)
        text += row({s.name, "\"" + c.name + "\"", c.pass ? "pass" : "fail", format_double(c.measured),
                     format_double(c.bound)});
    ctx.write(text);
  }
  if (!ok) {
    std::vector<SuiteResult> failed;
    for (const auto& s : results)
      if (!s.pass()) failed.push_back(s);
    ctx.err() << report_json("verify-all failures", failed);
    return 1;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bwave: Bessel-deformed exterior derivatives, wave equations and wave fronts", "bwave"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common common;
  std::function<int(Context&)> action;
  std::string chosen;

  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->set_help_flag("--help", "print this help message and exit");
    add_common(s, common);
    return s;
  };

  BesselArgs bessel;
  {
    CLI::App* s = sub("bessel", "Bessel profile tables and identity checks");
    s->add_option("--n,--q", bessel.n, "profile index n")->capture_default_str();
    s->add_option("--r", bessel.r, "explicit radii")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--r-min", bessel.r_min)->capture_default_str();
    s->add_option("--r-max", bessel.r_max)->capture_default_str();
    s->add_option("--points", bessel.points)->capture_default_str();
    s->add_flag("--check", bessel.check, "fail (exit 1) if the ODE residual exceeds 1e-9");
    s->callback([&] { action = [&](Context& c) { return cmd_bessel(c, bessel); }; chosen = "bessel"; });
  }
  SpectralArgs spectral;
  {
    CLI::App* s = sub("spectral", "Domain spectra, Betti tables, symmetry commutators, discrete-wave orbits");
    s->add_option("--domain", spectral.domain, "circle, torus or simplicial")->capture_default_str();
    s->add_option("--q", spectral.q, "torus dimension")->capture_default_str();
    s->add_option("--max-freq", spectral.max_freq)->capture_default_str();
    s->add_option("--complex", spectral.complex, "simplicial complex JSON file (default: octahedron)");
    s->add_option("--mode", spectral.mode, "spectrum, betti, commutator or orbit")->capture_default_str();
    s->add_option("--t", spectral.t, "deformation parameters")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--tol", spectral.tol, "kernel tolerance");
    s->add_option("--bessel-q", spectral.bessel_q, "Bessel dimension parameter (default: ambient dimension)");
    s->add_option("--linear", spectral.linear, "signed permutation matrix, row-major")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--shift", spectral.shift, "translation vector")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--h", spectral.h, "discrete wave map parameter (default: ||D_h|| = 0.9 on the circle)");
    s->add_option("--steps", spectral.steps, "orbit iterations")->capture_default_str();
    s->callback([&] { action = [&](Context& c) { return cmd_spectral(c, spectral); }; chosen = "spectral"; });
  }
  WaveArgs wave;
  {
    CLI::App* s = sub("wave", "Solution snapshots and residual sweeps");
    s->add_option("--domain", wave.domain, "circle or torus")->capture_default_str();
    s->add_option("--q", wave.q, "torus dimension")->capture_default_str();
    s->add_option("--bessel-q", wave.bessel_q, "Bessel dimension parameter");
    s->add_option("--max-freq", wave.max_freq)->capture_default_str();
    s->add_option("--kind", wave.kind, "classical, velocity or position")->capture_default_str();
    s->add_option("--t-min", wave.t_min)->capture_default_str();
    s->add_option("--t-max", wave.t_max)->capture_default_str();
    s->add_option("--points", wave.points)->capture_default_str();
    s->add_option("--dt", wave.dt)->capture_default_str();
    s->add_option("--degree", wave.degree, "degree of the source f")->capture_default_str();
    s->add_option("--decay", wave.decay, "coefficient damping exp(-decay |m|)")->capture_default_str();
    s->add_option("--modes", wave.modes, "number of per-mode amplitude columns")->capture_default_str();
    s->callback([&] { action = [&](Context& c) { return cmd_wave(c, wave); }; chosen = "wave"; });
  }
  PizzettiArgs pizzetti;
  {
    CLI::App* s = sub("pizzetti", "Random-polynomial verification of the mean-value series");
    s->add_option("--q", pizzetti.q, "dimension (0: cycle 1..3)")->capture_default_str();
    s->add_option("--count", pizzetti.count)->capture_default_str();
    s->add_option("--degree", pizzetti.degree)->capture_default_str();
    s->callback([&] { action = [&](Context& c) { return cmd_pizzetti(c, pizzetti); }; chosen = "pizzetti"; });
  }
  std::vector<int> exponents;
  {
    CLI::App* s = sub("polarize", "Polarization expansion of a monomial");
    s->add_option("--exponents", exponents, "exponents m_1 .. m_k")
        ->required()
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->callback([&] { action = [&](Context& c) { return cmd_polarize(c, exponents); }; chosen = "polarize"; });
  }
  LocalityProbeConfig probe;
  {
    CLI::App* s = sub("huygens-probe", "Interior leakage of deformed and classical propagators");
    s->add_option("--q", probe.q)->capture_default_str();
    s->add_option("--max-freq", probe.max_frequency)->capture_default_str();
    s->add_option("--sigma", probe.sigma)->capture_default_str();
    s->add_option("--t", probe.t)->capture_default_str();
    s->add_option("--w", probe.annulus, "annulus width")->capture_default_str();
    s->add_option("--grid", probe.grid)->capture_default_str();
    s->add_option("--bins", probe.bins)->capture_default_str();
    s->add_option("--tol", probe.tail_limit, "largest accepted spectral tail of the bump")->capture_default_str();
    s->callback([&] { action = [&](Context& c) { return cmd_probe(c, probe); }; chosen = "huygens-probe"; });
  }
  GeometryArgs curvature;
  {
    CLI::App* s = sub("curvature", "R2-D2 and Puiseux curvature sweeps");
    s->add_option("--chart", curvature.chart, "flat, sphere, sphere_polar, hyperbolic, torus or a JSON file")
        ->capture_default_str();
    s->add_option("--h", curvature.h, "radii")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--px", curvature.px);
    s->add_option("--py", curvature.py);
    s->add_option("--ntheta", curvature.ntheta)->capture_default_str();
    s->add_option("--boundary-radius", curvature.boundary_radius, "also report the boundary formula for a disc");
    s->callback([&] { action = [&](Context& c) { return cmd_curvature(c, curvature); }; chosen = "curvature"; });
  }
  GeometryArgs front;
  {
    CLI::App* s = sub("front", "Wave-front polylines, lengths and line integrals");
    s->add_option("--chart", front.chart)->capture_default_str();
    s->add_option("--t", front.t)->capture_default_str();
    s->add_option("--px", front.px);
    s->add_option("--py", front.py);
    s->add_option("--ntheta", front.ntheta)->capture_default_str();
    s->add_option("--steps", front.steps, "RK4 steps (default ceil(t/1e-3))");
    s->add_option("--P", front.p_expr, "dx coefficient of the 1-form")->capture_default_str();
    s->add_option("--Q", front.q_expr, "dy coefficient of the 1-form")->capture_default_str();
    s->callback([&] { action = [&](Context& c) { return cmd_front(c, front); }; chosen = "front"; });
  }
  VerifyArgs verify;
  {
    CLI::App* s = sub("verify-all", "The full property suite as a pass/fail report");
    s->add_flag("--quick", verify.quick, "smaller sample counts");
    s->add_option("--only", verify.only, "criterion numbers")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->callback([&] { action = [&](Context& c) { return cmd_verify(c, verify); }; chosen = "verify-all"; });
  }

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n" << "run 'bwave --help' for usage\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Context ctx(chosen, common, out, err);
    return action(ctx);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << " (measured " << format_double(e.measured()) << ")\n";
    return 2;
  } catch (const ChartExitError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace bwave::tools
