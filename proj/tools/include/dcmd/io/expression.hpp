#pragma once

#include <memory>
#include <string>
#include <vector>

namespace dcmd::io {

/// Variables an expression may reference.
enum class Variable { T, X, Y };

/// Arithmetic expression over t, x, y with +, -, *, /, ^, unary minus, parentheses,
/// the functions sin, cos, exp and the constant pi.
class Expression {
 public:
  Expression();

  /// Throws ParseError with the 1-based line and column of the offending token; line and
  /// column_offset locate the expression inside a larger document.
  static Expression parse(const std::string& text, const std::vector<Variable>& allowed,
                          std::size_t line = 1, std::size_t column_offset = 0);
  static Expression constant(double value);

  double operator()(double t, double x, double y) const;
  const std::string& text() const noexcept { return text_; }
  bool is_zero_constant() const;

  friend bool operator==(const Expression& a, const Expression& b) { return a.text_ == b.text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace dcmd::io
