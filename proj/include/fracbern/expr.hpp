#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracbern {

// Arithmetic expressions over the variables t and x: literals, unary minus,
// + - * / ^ (with ^ right-associative and binding tightest), and the calls
// sin, cos, exp, ln, sqrt, abs, gamma, pow.
struct Expr {
  enum class Kind { Number, Variable, Unary, Binary, Call };
  Kind kind = Kind::Number;
  double number = 0.0;
  char variable = 't';
  char op = 0;
  std::string callee;
  std::shared_ptr<const Expr> lhs, rhs;
  std::vector<std::shared_ptr<const Expr>> args;
  std::size_t span_begin = 0, span_end = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset,
             std::vector<std::string> expected_tokens)
      : std::runtime_error(msg + " at byte " + std::to_string(offset)),
        offset(offset),
        expected(std::move(expected_tokens)) {}
  std::size_t offset;
  std::vector<std::string> expected;
};

class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& msg, std::size_t begin, std::size_t end)
      : std::runtime_error(msg + " (span " + std::to_string(begin) + ".." +
                           std::to_string(end) + ")"),
        span_begin(begin),
        span_end(end) {}
  std::size_t span_begin, span_end;
};

ExprPtr parse_expr(std::string_view src);

double eval_expr(const Expr& e, double t, double x);

/// Unambiguous text form; parse_expr(to_string(e)) is structurally equal to e.
std::string to_string(const Expr& e);

bool equal(const Expr& a, const Expr& b);

}  // namespace fracbern
