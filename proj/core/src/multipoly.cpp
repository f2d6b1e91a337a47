#include "bwave/multipoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bwave {

MultiPoly::MultiPoly(int q) : q_(q) {
  if (q < 1) throw std::invalid_argument("polynomial needs at least one variable");
}

MultiPoly MultiPoly::constant(int q, const Rational& c) {
  MultiPoly p(q);
  p.add_term(Exponent(static_cast<std::size_t>(q), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int q, int axis) {
  if (axis < 0 || axis >= q) throw std::invalid_argument("variable index out of range");
  Exponent alpha(static_cast<std::size_t>(q), 0);
  alpha[static_cast<std::size_t>(axis)] = 1;
  return monomial(alpha);
}

MultiPoly MultiPoly::monomial(const Exponent& alpha, const Rational& c) {
  MultiPoly p(static_cast<int>(alpha.size()));
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("negative exponent");
  p.add_term(alpha, c);
  return p;
}

MultiPoly MultiPoly::linear(const std::vector<Rational>& c) {
  MultiPoly p(static_cast<int>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Exponent alpha(c.size(), 0);
    alpha[i] = 1;
    p.add_term(alpha, c[i]);
  }
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) {
    int s = 0;
    for (int a : alpha) s += a;
    d = std::max(d, s);
  }
  return d;
}

Rational MultiPoly::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::value_at_origin() const { return coefficient(Exponent(static_cast<std::size_t>(q_), 0)); }

Rational MultiPoly::evaluate(const std::vector<Rational>& x) const {
  if (x.size() != static_cast<std::size_t>(q_)) throw std::invalid_argument("point dimension mismatch");
  Rational sum = 0;
  for (const auto& [alpha, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (int e = 0; e < alpha[i]; ++e) term *= x[i];
    sum += term;
  }
  return sum;
}

double MultiPoly::evaluate(const std::vector<double>& x) const {
  if (x.size() != static_cast<std::size_t>(q_)) throw std::invalid_argument("point dimension mismatch");
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double term = to_double(c);
    for (std::size_t i = 0; i < alpha.size(); ++i) term *= std::pow(x[i], alpha[i]);
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::derivative(int axis) const {
  if (axis < 0 || axis >= q_) throw std::invalid_argument("derivative axis out of range");
  MultiPoly out(q_);
  for (const auto& [alpha, c] : terms_) {
    const int e = alpha[static_cast<std::size_t>(axis)];
    if (e == 0) continue;
    Exponent beta = alpha;
    --beta[static_cast<std::size_t>(axis)];
    out.add_term(beta, c * e);
  }
  return out;
}

MultiPoly MultiPoly::laplacian() const {
  MultiPoly out(q_);
  for (int i = 0; i < q_; ++i) out += derivative(i).derivative(i);
  return out;
}

MultiPoly MultiPoly::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative power");
  MultiPoly result = constant(q_, 1);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::translated(const std::vector<Rational>& center) const {
  if (center.size() != static_cast<std::size_t>(q_)) throw std::invalid_argument("center dimension mismatch");
  std::vector<MultiPoly> shifted;
  for (int i = 0; i < q_; ++i)
    shifted.push_back(variable(q_, i) + constant(q_, center[static_cast<std::size_t>(i)]));
  MultiPoly out(q_);
  for (const auto& [alpha, c] : terms_) {
    MultiPoly term = constant(q_, c);
    for (int i = 0; i < q_; ++i) term = term * shifted[static_cast<std::size_t>(i)].pow(alpha[static_cast<std::size_t>(i)]);
    out += term;
  }
  return out;
}

void MultiPoly::check_same(const MultiPoly& o) const {
  if (o.q_ != q_) throw std::invalid_argument("polynomials in different numbers of variables");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same(o);
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same(o);
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same(b);
  MultiPoly out(a.q_);
  for (const auto& [alpha, ca] : a.terms_)
    for (const auto& [beta, cb] : b.terms_) {
      Exponent gamma = alpha;
      for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] += beta[i];
      out.add_term(gamma, ca * cb);
    }
  return out;
}

void MultiPoly::add_term(const Exponent& alpha, const Rational& c) {
  if (alpha.size() != static_cast<std::size_t>(q_)) throw std::invalid_argument("exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names = "xyzw";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [alpha, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    bool constant_term = std::all_of(alpha.begin(), alpha.end(), [](int a) { return a == 0; });
    if (mag != 1 || constant_term) os << mag;
    bool need_sep = mag != 1;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      if (need_sep) os << "*";
      if (q_ <= 4) os << names[i];
      else os << "x" << i;
      if (alpha[i] > 1) os << "^" << alpha[i];
      need_sep = true;
    }
  }
  return os.str();
}

namespace {

int permutation_sign(std::vector<int> axes) {
  int sign = 1;
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = 0; j + 1 < axes.size() - i; ++j)
      if (axes[j] > axes[j + 1]) {
        std::swap(axes[j], axes[j + 1]);
        sign = -sign;
      }
  return sign;
}

// Sign of dx_I ^ dx_J against dx_{I u J}; zero when they overlap.
int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int swaps = 0;
  for (int j = 0; j < 32; ++j)
    if (b & (1u << j)) swaps += std::popcount(a & ~((2u << j) - 1u));
  return (swaps % 2) ? -1 : 1;
}

}  // namespace

PolyKForm::PolyKForm(int q, int degree) : q_(q), k_(degree) {
  if (q < 1 || q > 16) throw std::invalid_argument("form dimension out of range");
  if (degree < 0 || degree > q) throw std::invalid_argument("form degree outside 0..q");
}

PolyKForm PolyKForm::scalar(const MultiPoly& g) {
  PolyKForm f(g.variables(), 0);
  f.add_component(0u, g);
  return f;
}

PolyKForm PolyKForm::basis(const MultiPoly& g, const std::vector<int>& axes) {
  const int q = g.variables();
  PolyKForm f(q, static_cast<int>(axes.size()));
  unsigned mask = 0;
  for (int a : axes) {
    if (a < 0 || a >= q) throw std::invalid_argument("axis out of range");
    if (mask & (1u << a)) return f;
    mask |= 1u << a;
  }
  f.add_component(mask, g * Rational(permutation_sign(axes)));
  return f;
}

PolyKForm PolyKForm::volume(const MultiPoly& g) {
  std::vector<int> axes;
  for (int i = 0; i < g.variables(); ++i) axes.push_back(i);
  return basis(g, axes);
}

MultiPoly PolyKForm::component(unsigned mask) const {
  auto it = components_.find(mask);
  return it == components_.end() ? MultiPoly(q_) : it->second;
}

void PolyKForm::add_component(unsigned mask, const MultiPoly& g) {
  if (g.variables() != q_) throw std::invalid_argument("component has the wrong number of variables");
  if (std::popcount(mask) != k_) throw std::invalid_argument("component of the wrong degree");
  if (g.is_zero()) return;
  auto [it, inserted] = components_.emplace(mask, g);
  if (!inserted) {
    it->second += g;
    if (it->second.is_zero()) components_.erase(it);
  }
}

PolyKForm& PolyKForm::operator+=(const PolyKForm& o) {
  if (o.q_ != q_ || o.k_ != k_) throw std::invalid_argument("adding forms of different type");
  for (const auto& [mask, g] : o.components_) add_component(mask, g);
  return *this;
}

PolyKForm& PolyKForm::operator-=(const PolyKForm& o) {
  if (o.q_ != q_ || o.k_ != k_) throw std::invalid_argument("subtracting forms of different type");
  for (const auto& [mask, g] : o.components_) add_component(mask, g * Rational(-1));
  return *this;
}

PolyKForm& PolyKForm::operator*=(const Rational& c) {
  if (c == 0) {
    components_.clear();
    return *this;
  }
  for (auto& [mask, g] : components_) g *= c;
  return *this;
}

std::string PolyKForm::to_string() const {
  if (components_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, g] : components_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << g.to_string() << ")";
    for (int i = 0; i < q_; ++i)
      if (mask & (1u << i)) os << " dx" << i;
  }
  return os.str();
}

PolyKForm wedge(const PolyKForm& a, const PolyKForm& b) {
  if (a.q_ != b.q_) throw std::invalid_argument("wedge of forms in different dimensions");
  if (a.k_ + b.k_ > a.q_) return PolyKForm(a.q_, a.q_);
  PolyKForm out(a.q_, a.k_ + b.k_);
  for (const auto& [ma, ga] : a.components_)
    for (const auto& [mb, gb] : b.components_) {
      const int s = wedge_sign(ma, mb);
      if (s != 0) out.add_component(ma | mb, ga * gb * Rational(s));
    }
  return out;
}

PolyKForm exterior_derivative(const PolyKForm& f) {
  const int q = f.variables();
  if (f.degree() == q) throw std::invalid_argument("exterior derivative of a top-degree form");
  PolyKForm out(q, f.degree() + 1);
  for (const auto& [mask, g] : f.components()) {
    for (int j = 0; j < q; ++j) {
      if (mask & (1u << j)) continue;
      const MultiPoly dg = g.derivative(j);
      // dx_j ^ dx_I = (-1)^{#{i in I : i < j}} dx_{I u j}
      const int sign = (std::popcount(mask & ((1u << j) - 1u)) % 2) ? -1 : 1;
      out.add_component(mask | (1u << j), dg * Rational(sign));
    }
  }
  return out;
}

PolyKForm interior_product(const std::vector<Rational>& x, const PolyKForm& f) {
  const int q = f.variables();
  if (x.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("vector field dimension mismatch");
  if (f.degree() == 0) throw std::invalid_argument("interior product of a 0-form");
  PolyKForm out(q, f.degree() - 1);
  for (const auto& [mask, g] : f.components()) {
    int position = 0;
    for (int i = 0; i < q; ++i) {
      if (!(mask & (1u << i))) continue;
      const Rational coeff = x[static_cast<std::size_t>(i)] * Rational((position % 2) ? -1 : 1);
      ++position;
      if (coeff == 0) continue;
      std::vector<int> rest;
      for (int j = 0; j < q; ++j)
        if (j != i && (mask & (1u << j))) rest.push_back(j);
      out += PolyKForm::basis(g * coeff, rest);
    }
  }
  return out;
}

PolyKForm lie_derivative(const std::vector<Rational>& x, const PolyKForm& f) {
  const int q = f.variables();
  if (x.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("vector field dimension mismatch");
  if (f.degree() == 0) return interior_product(x, exterior_derivative(f));
  if (f.degree() == q) return exterior_derivative(interior_product(x, f));
  return interior_product(x, exterior_derivative(f)) + exterior_derivative(interior_product(x, f));
}

}  // namespace bwave
