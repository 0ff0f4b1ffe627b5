#include "jdx/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "jdx/errors.hpp"

namespace jdx::expr {

enum class Op { Num, VarX, VarZ, Add, Sub, Mul, Div, Pow, Neg, Exp, Log, Abs, Tanh, Sin, Cos, Sqrt };

struct Node {
  Op op;
  double num = 0.0;
  std::unique_ptr<Node> a, b;

  double eval(double x, double z) const {
    switch (op) {
      case Op::Num: return num;
      case Op::VarX: return x;
      case Op::VarZ: return z;
      case Op::Add: return a->eval(x, z) + b->eval(x, z);
      case Op::Sub: return a->eval(x, z) - b->eval(x, z);
      case Op::Mul: return a->eval(x, z) * b->eval(x, z);
      case Op::Div: return a->eval(x, z) / b->eval(x, z);
      case Op::Pow: return std::pow(a->eval(x, z), b->eval(x, z));
      case Op::Neg: return -a->eval(x, z);
      case Op::Exp: return std::exp(a->eval(x, z));
      case Op::Log: return std::log(a->eval(x, z));
      case Op::Abs: return std::abs(a->eval(x, z));
      case Op::Tanh: return std::tanh(a->eval(x, z));
      case Op::Sin: return std::sin(a->eval(x, z));
      case Op::Cos: return std::cos(a->eval(x, z));
      case Op::Sqrt: return std::sqrt(a->eval(x, z));
    }
    return NAN;
  }
};

namespace {

using NodePtr = std::unique_ptr<Node>;

NodePtr leaf(Op op, double v = 0.0) {
  auto n = std::make_unique<Node>();
  n->op = op;
  n->num = v;
  return n;
}

NodePtr unary(Op op, NodePtr a) {
  auto n = leaf(op);
  n->a = std::move(a);
  return n;
}

NodePtr binary(Op op, NodePtr a, NodePtr b) {
  auto n = leaf(op);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    auto n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

  bool uses_x = false, uses_zeta = false;

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + s_ + "': " + what + " at position " +
                     std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto n = term();
    for (;;) {
      if (accept('+')) n = binary(Op::Add, std::move(n), term());
      else if (accept('-')) n = binary(Op::Sub, std::move(n), term());
      else return n;
    }
  }

  NodePtr term() {
    auto n = signed_factor();
    for (;;) {
      if (accept('*')) n = binary(Op::Mul, std::move(n), signed_factor());
      else if (accept('/')) n = binary(Op::Div, std::move(n), signed_factor());
      else return n;
    }
  }

  NodePtr signed_factor() {
    if (accept('-')) return unary(Op::Neg, signed_factor());
    if (accept('+')) return signed_factor();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return binary(Op::Pow, std::move(base), signed_factor());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return leaf(Op::Num, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "x") {
        uses_x = true;
        return leaf(Op::VarX);
      }
      if (id == "zeta") {
        uses_zeta = true;
        return leaf(Op::VarZ);
      }
      if (id == "pi") return leaf(Op::Num, 3.14159265358979323846);
      static const std::vector<std::pair<std::string, Op>> funcs = {
          {"exp", Op::Exp}, {"log", Op::Log},   {"abs", Op::Abs}, {"tanh", Op::Tanh},
          {"sin", Op::Sin}, {"cos", Op::Cos}, {"sqrt", Op::Sqrt}};
      for (const auto& [name, op] : funcs) {
        if (name == id) {
          if (!accept('(')) fail("expected '(' after " + id);
          auto arg = expr();
          if (!accept(')')) fail("expected ')'");
          return unary(op, std::move(arg));
        }
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  Expression e;
  e.root_ = std::shared_ptr<const Node>(p.parse().release());
  e.text_ = text;
  e.uses_x_ = p.uses_x;
  e.uses_zeta_ = p.uses_zeta;
  return e;
}

double Expression::operator()(double x, double zeta) const {
  if (!root_) throw ParameterError("empty expression");
  return root_->eval(x, zeta);
}

}  // namespace jdx::expr
