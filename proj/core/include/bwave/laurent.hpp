#pragma once

#include <map>
#include <string>

#include "bwave/rational.hpp"

namespace bwave {

/// Exact Laurent polynomial in a single variable t with rational
/// coefficients. Used for time profiles of the Bessel accelerations and for
/// averages that are polynomial in the radius.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(int power, const Rational& coefficient = 1);
  static LaurentPoly constant(const Rational& c) { return monomial(0, c); }

  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coefficient(int power) const;
  bool is_zero() const { return terms_.empty(); }
  int min_power() const;
  int max_power() const;

  LaurentPoly derivative() const;
  LaurentPoly shifted(int power) const;  // multiply by t^power
  double evaluate(double t) const;
  Rational evaluate(const Rational& t) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Largest absolute coefficient (exact). Zero for the zero polynomial.
  Rational max_abs_coefficient() const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void add_term(int power, const Rational& c);

  std::map<int, Rational> terms_;
};

}  // namespace bwave
