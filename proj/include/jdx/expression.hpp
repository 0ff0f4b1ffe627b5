#pragma once

#include <memory>
#include <string>

namespace jdx::expr {

struct Node;

/// Arithmetic expression in the variables x and zeta.
///
/// Grammar: numbers, x, zeta, pi, + - * / ^ (right associative, binds
/// tighter than unary minus), parentheses and the functions
/// exp log abs tanh sin cos sqrt.
class Expression {
 public:
  static Expression parse(const std::string& text);

  double operator()(double x, double zeta = 0.0) const;
  bool uses_x() const { return uses_x_; }
  bool uses_zeta() const { return uses_zeta_; }
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_x_ = false, uses_zeta_ = false;
};

}  // namespace jdx::expr
