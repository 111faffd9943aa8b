#include "dcmd/io/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "dcmd/errors.hpp"

namespace dcmd::io {

struct Expression::Node {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp } kind;
  double value = 0.0;
  Variable var = Variable::T;
  std::shared_ptr<const Node> a, b;

  double eval(double t, double x, double y) const {
    switch (kind) {
      case Kind::Number: return value;
      case Kind::Var: return var == Variable::T ? t : var == Variable::X ? x : y;
      case Kind::Neg: return -a->eval(t, x, y);
      case Kind::Add: return a->eval(t, x, y) + b->eval(t, x, y);
      case Kind::Sub: return a->eval(t, x, y) - b->eval(t, x, y);
      case Kind::Mul: return a->eval(t, x, y) * b->eval(t, x, y);
      case Kind::Div: return a->eval(t, x, y) / b->eval(t, x, y);
      case Kind::Pow: return std::pow(a->eval(t, x, y), b->eval(t, x, y));
      case Kind::Sin: return std::sin(a->eval(t, x, y));
      case Kind::Cos: return std::cos(a->eval(t, x, y));
      case Kind::Exp: return std::exp(a->eval(t, x, y));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr leaf(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Number;
  n->value = v;
  return n;
}

NodePtr unary(Node::Kind k, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}

NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<Variable>& allowed, std::size_t line,
         std::size_t offset)
      : s_(text), allowed_(allowed), line_(line), offset_(offset) {}

  NodePtr run() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    auto n = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, offset_ + std::min(pos_, s_.size()) + 1);
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
      if (accept('+')) n = binary(Node::Kind::Add, n, term());
      else if (accept('-')) n = binary(Node::Kind::Sub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    auto n = factor();
    for (;;) {
      if (accept('*')) n = binary(Node::Kind::Mul, n, factor());
      else if (accept('/')) n = binary(Node::Kind::Div, n, factor());
      else return n;
    }
  }

  NodePtr factor() {
    if (accept('-')) return unary(Node::Kind::Neg, factor());
    if (accept('+')) return factor();
    auto base = primary();
    if (accept('^')) return binary(Node::Kind::Pow, base, factor());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (accept('(')) {
      auto n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return leaf(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "sin" || name == "cos" || name == "exp") {
      if (!accept('(')) fail("expected '(' after " + name);
      auto arg = expr();
      if (!accept(')')) fail("expected ')'");
      const auto kind = name == "sin" ? Node::Kind::Sin : name == "cos" ? Node::Kind::Cos : Node::Kind::Exp;
      return unary(kind, arg);
    }
    if (name == "pi") return leaf(std::numbers::pi);
    Variable v{};
    if (name == "t") v = Variable::T;
    else if (name == "x") v = Variable::X;
    else if (name == "y") v = Variable::Y;
    else {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (std::find(allowed_.begin(), allowed_.end(), v) == allowed_.end()) {
      pos_ = start;
      fail("variable '" + name + "' is not allowed here");
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Var;
    n->var = v;
    return n;
  }

  const std::string& s_;
  const std::vector<Variable>& allowed_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression() : text_("0"), root_(leaf(0.0)) {}

Expression Expression::parse(const std::string& text, const std::vector<Variable>& allowed,
                             std::size_t line, std::size_t column_offset) {
  Expression e;
  e.root_ = Parser(text, allowed, line, column_offset).run();
  e.text_ = text;
  return e;
}

Expression Expression::constant(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  Expression e;
  e.text_.assign(buf, ptr);
  e.root_ = leaf(value);
  return e;
}

double Expression::operator()(double t, double x, double y) const { return root_->eval(t, x, y); }

bool Expression::is_zero_constant() const {
  return root_->kind == Node::Kind::Number && root_->value == 0.0;
}

}  // namespace dcmd::io
