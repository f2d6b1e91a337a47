#pragma once

#include <memory>
#include <string>

namespace bwave {

/// A parsed real expression in the variables x and y.
///
/// Grammar: numbers, x, y, pi, + - * / ^ (also the middle dot for
/// multiplication), unary minus, parentheses and the functions sin, cos,
/// sinh, cosh, exp, sqrt. ^ binds tighter than unary minus and is right
/// associative: -x^2 is -(x^2).
class Expression {
 public:
  static Expression parse(const std::string& text);

  double operator()(double x, double y) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace bwave
