#pragma once

#include <map>
#include <string>
#include <vector>

#include "bwave/rational.hpp"

namespace bwave {

using Exponent = std::vector<int>;

/// Polynomial in q variables with exact rational coefficients. Zero
/// coefficients are never stored.
class MultiPoly {
 public:
  explicit MultiPoly(int q = 1);

  static MultiPoly constant(int q, const Rational& c);
  static MultiPoly variable(int q, int axis);
  static MultiPoly monomial(const Exponent& alpha, const Rational& c = 1);
  /// sum_i c_i x_i
  static MultiPoly linear(const std::vector<Rational>& c);

  int variables() const { return q_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  Rational coefficient(const Exponent& alpha) const;
  Rational value_at_origin() const;
  Rational evaluate(const std::vector<Rational>& x) const;
  double evaluate(const std::vector<double>& x) const;

  MultiPoly derivative(int axis) const;
  /// Positive Laplacian sum_i d^2/dx_i^2.
  MultiPoly laplacian() const;
  MultiPoly pow(int n) const;
  /// g(x + center).
  MultiPoly translated(const std::vector<Rational>& center) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.q_ == b.q_ && a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Exponent& alpha, const Rational& c);
  void check_same(const MultiPoly& o) const;

  int q_;
  std::map<Exponent, Rational> terms_;
};

/// Polynomial differential k-form on R^q: sum_I g_I dx_I, where I is an
/// increasing axis subset stored as a bitmask.
class PolyKForm {
 public:
  PolyKForm(int q, int degree);

  static PolyKForm scalar(const MultiPoly& g);
  /// g dx_{axes}; axes in any order (the permutation sign is applied).
  static PolyKForm basis(const MultiPoly& g, const std::vector<int>& axes);
  /// Top-degree form g dx_0 ^ ... ^ dx_{q-1}.
  static PolyKForm volume(const MultiPoly& g);

  int variables() const { return q_; }
  int degree() const { return k_; }
  const std::map<unsigned, MultiPoly>& components() const { return components_; }
  MultiPoly component(unsigned mask) const;
  bool is_zero() const { return components_.empty(); }

  PolyKForm& operator+=(const PolyKForm& o);
  PolyKForm& operator-=(const PolyKForm& o);
  PolyKForm& operator*=(const Rational& c);
  friend PolyKForm operator+(PolyKForm a, const PolyKForm& b) { return a += b; }
  friend PolyKForm operator-(PolyKForm a, const PolyKForm& b) { return a -= b; }
  friend PolyKForm operator*(PolyKForm a, const Rational& c) { return a *= c; }
  friend bool operator==(const PolyKForm& a, const PolyKForm& b) {
    return a.q_ == b.q_ && a.k_ == b.k_ && a.components_ == b.components_;
  }

  std::string to_string() const;

 private:
  friend PolyKForm wedge(const PolyKForm& a, const PolyKForm& b);
  friend PolyKForm exterior_derivative(const PolyKForm& f);
  void add_component(unsigned mask, const MultiPoly& g);

  int q_;
  int k_;
  std::map<unsigned, MultiPoly> components_;
};

PolyKForm wedge(const PolyKForm& a, const PolyKForm& b);
PolyKForm exterior_derivative(const PolyKForm& f);
/// Contraction with a constant vector field X.
PolyKForm interior_product(const std::vector<Rational>& x, const PolyKForm& f);
/// Cartan: L_X = i_X d + d i_X.
PolyKForm lie_derivative(const std::vector<Rational>& x, const PolyKForm& f);

}  // namespace bwave
