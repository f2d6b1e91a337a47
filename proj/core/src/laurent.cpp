#include "bwave/laurent.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bwave {

LaurentPoly LaurentPoly::monomial(int power, const Rational& coefficient) {
  LaurentPoly p;
  p.add_term(power, coefficient);
  return p;
}

void LaurentPoly::add_term(int power, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(power, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational LaurentPoly::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_power() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly out;
  for (const auto& [p, c] : terms_) {
    if (p != 0) out.add_term(p - 1, c * p);
  }
  return out;
}

LaurentPoly LaurentPoly::shifted(int power) const {
  LaurentPoly out;
  for (const auto& [p, c] : terms_) out.terms_.emplace(p + power, c);
  return out;
}

double LaurentPoly::evaluate(double t) const {
  double sum = 0.0;
  for (const auto& [p, c] : terms_) sum += to_double(c) * std::pow(t, p);
  return sum;
}

Rational LaurentPoly::evaluate(const Rational& t) const {
  Rational sum = 0;
  for (const auto& [p, c] : terms_) {
    if (p < 0 && t == 0) throw std::domain_error("negative power evaluated at 0");
    Rational power = 1;
    const Rational base = p < 0 ? Rational(1) / t : t;
    for (int i = 0; i < std::abs(p); ++i) power *= base;
    sum += c * power;
  }
  return sum;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) out.add_term(pa + pb, ca * cb);
  return out;
}

Rational LaurentPoly::max_abs_coefficient() const {
  Rational m = 0;
  for (const auto& [p, c] : terms_) {
    Rational a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [p, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (p == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << var;
    if (p != 1) os << "^" << p;
  }
  return os.str();
}

}  // namespace bwave
