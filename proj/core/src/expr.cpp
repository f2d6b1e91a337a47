#include "bwave/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace bwave {

struct Expression::Node {
  enum class Kind { number, x, y, add, sub, mul, div, pow, neg, call } kind;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> a, b;

  double eval(double x, double y) const {
    switch (kind) {
      case Kind::number: return value;
      case Kind::x: return x;
      case Kind::y: return y;
      case Kind::add: return a->eval(x, y) + b->eval(x, y);
      case Kind::sub: return a->eval(x, y) - b->eval(x, y);
      case Kind::mul: return a->eval(x, y) * b->eval(x, y);
      case Kind::div: return a->eval(x, y) / b->eval(x, y);
      case Kind::pow: {
        const double e = b->eval(x, y);
        if (e == std::round(e) && std::abs(e) <= 64) {
          const double base = a->eval(x, y);
          double r = 1.0;
          for (int i = 0; i < std::abs(static_cast<int>(e)); ++i) r *= base;
          return e < 0 ? 1.0 / r : r;
        }
        return std::pow(a->eval(x, y), e);
      }
      case Kind::neg: return -a->eval(x, y);
      case Kind::call: return fn(a->eval(x, y));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression \"" + s_ + "\": " + what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(const std::string& token) {
    skip();
    if (s_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (accept("+")) n = make(Kind::add, n, product());
      else if (accept("-")) n = make(Kind::sub, n, product());
      else return n;
    }
  }

  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (accept("*") || accept("\xC2\xB7")) n = make(Kind::mul, n, unary());
      else if (accept("/")) n = make(Kind::div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept("-")) return make(Kind::neg, unary());
    if (accept("+")) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept("^")) return make(Kind::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = sum();
      if (!accept(")")) fail("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "x") return make(Kind::x);
      if (name == "y") return make(Kind::y);
      if (name == "pi") {
        auto n = std::make_shared<Expression::Node>();
        n->kind = Kind::number;
        n->value = M_PI;
        return n;
      }
      double (*fn)(double) = nullptr;
      if (name == "sin") fn = [](double v) { return std::sin(v); };
      else if (name == "cos") fn = [](double v) { return std::cos(v); };
      else if (name == "sinh") fn = [](double v) { return std::sinh(v); };
      else if (name == "cosh") fn = [](double v) { return std::cosh(v); };
      else if (name == "exp") fn = [](double v) { return std::exp(v); };
      else if (name == "sqrt") fn = [](double v) { return std::sqrt(v); };
      else fail("unknown identifier '" + name + "'");
      if (!accept("(")) fail("expected '(' after " + name);
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::call;
      n->fn = fn;
      n->a = sum();
      if (!accept(")")) fail("missing ')'");
      return n;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.root_ = Parser(text).parse();
  e.text_ = text;
  return e;
}

double Expression::operator()(double x, double y) const { return root_->eval(x, y); }

}  // namespace bwave
