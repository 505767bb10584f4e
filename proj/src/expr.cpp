#include "fracbern/expr.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace fracbern {

namespace {

const char* const kFunctions[] = {"sin", "cos", "exp", "ln", "sqrt", "abs", "gamma", "pow"};

bool is_function(const std::string& name) {
  for (const char* f : kFunctions) {
    if (name == f) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) {
      throw ParseError("unexpected trailing input", pos_, {"end of input", "operator"});
    }
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr make(Expr e, std::size_t begin) const {
    e.span_begin = begin;
    e.span_end = pos_;
    return std::make_shared<const Expr>(std::move(e));
  }

  ExprPtr parse_sum() {
    skip_ws();
    const std::size_t begin = pos_;
    ExprPtr e = parse_product();
    for (;;) {
      char op;
      if (accept('+')) {
        op = '+';
      } else if (accept('-')) {
        op = '-';
      } else {
        return e;
      }
      Expr node;
      node.kind = Expr::Kind::Binary;
      node.op = op;
      node.lhs = e;
      node.rhs = parse_product();
      e = make(std::move(node), begin);
    }
  }

  ExprPtr parse_product() {
    skip_ws();
    const std::size_t begin = pos_;
    ExprPtr e = parse_unary();
    for (;;) {
      char op;
      if (accept('*')) {
        op = '*';
      } else if (accept('/')) {
        op = '/';
      } else {
        return e;
      }
      Expr node;
      node.kind = Expr::Kind::Binary;
      node.op = op;
      node.lhs = e;
      node.rhs = parse_unary();
      e = make(std::move(node), begin);
    }
  }

  // unary minus binds looser than ^, so -t^2 parses as -(t^2)
  ExprPtr parse_unary() {
    skip_ws();
    const std::size_t begin = pos_;
    if (accept('-')) {
      Expr node;
      node.kind = Expr::Kind::Unary;
      node.op = '-';
      node.lhs = parse_unary();
      return make(std::move(node), begin);
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    skip_ws();
    const std::size_t begin = pos_;
    ExprPtr base = parse_primary();
    if (accept('^')) {
      Expr node;
      node.kind = Expr::Kind::Binary;
      node.op = '^';
      node.lhs = base;
      node.rhs = parse_unary();  // right associative; allows 2^-3
      return make(std::move(node), begin);
    }
    return base;
  }

  ExprPtr parse_primary() {
    skip_ws();
    const std::size_t begin = pos_;
    if (pos_ >= src_.size()) {
      throw ParseError("unexpected end of input", pos_,
                       {"number", "t", "x", "function", "("});
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number(begin);
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      if (!accept(')')) {
        throw ParseError("unbalanced parenthesis", pos_, {")"});
      }
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < src_.size() &&
             std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
        name += src_[pos_++];
      }
      if (name == "t" || name == "x") {
        Expr node;
        node.kind = Expr::Kind::Variable;
        node.variable = name[0];
        return make(std::move(node), begin);
      }
      if (is_function(name)) {
        if (!accept('(')) {
          throw ParseError("expected argument list after '" + name + "'", pos_, {"("});
        }
        Expr node;
        node.kind = Expr::Kind::Call;
        node.callee = name;
        node.args.push_back(parse_sum());
        if (name == "pow") {
          if (!accept(',')) {
            throw ParseError("pow takes two arguments", pos_, {","});
          }
          node.args.push_back(parse_sum());
        }
        if (!accept(')')) {
          throw ParseError("unbalanced call parenthesis", pos_, {")"});
        }
        return make(std::move(node), begin);
      }
      throw ParseError("unknown identifier '" + name + "'", begin,
                       {"t", "x", "sin", "cos", "exp", "ln", "sqrt", "abs", "gamma", "pow"});
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_,
                     {"number", "t", "x", "function", "("});
  }

  ExprPtr parse_number(std::size_t begin) {
    const char* start = src_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) {
      throw ParseError("malformed number", pos_, {"number"});
    }
    // reject strtod's acceptance of inf/nan spellings and hex floats
    if (!std::isfinite(v)) {
      throw ParseError("non-finite literal", pos_, {"number"});
    }
    pos_ += static_cast<std::size_t>(end - start);
    Expr node;
    node.kind = Expr::Kind::Number;
    node.number = v;
    return make(std::move(node), begin);
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view src) { return Parser(src).parse(); }

double eval_expr(const Expr& e, double t, double x) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.number;
    case Expr::Kind::Variable:
      return e.variable == 't' ? t : x;
    case Expr::Kind::Unary:
      return -eval_expr(*e.lhs, t, x);
    case Expr::Kind::Binary: {
      const double a = eval_expr(*e.lhs, t, x);
      const double b = eval_expr(*e.rhs, t, x);
      double v = 0.0;
      switch (e.op) {
        case '+': v = a + b; break;
        case '-': v = a - b; break;
        case '*': v = a * b; break;
        case '/':
          if (b == 0.0) throw EvalError("division by zero", e.span_begin, e.span_end);
          v = a / b;
          break;
        case '^': v = std::pow(a, b); break;
        default: throw std::logic_error("eval_expr: unknown operator");
      }
      if (!std::isfinite(v)) {
        throw EvalError("non-finite result", e.span_begin, e.span_end);
      }
      return v;
    }
    case Expr::Kind::Call: {
      const double a = eval_expr(*e.args[0], t, x);
      double v = 0.0;
      if (e.callee == "sin") {
        v = std::sin(a);
      } else if (e.callee == "cos") {
        v = std::cos(a);
      } else if (e.callee == "exp") {
        v = std::exp(a);
      } else if (e.callee == "ln") {
        if (!(a > 0)) throw EvalError("ln of a non-positive value", e.span_begin, e.span_end);
        v = std::log(a);
      } else if (e.callee == "sqrt") {
        if (a < 0) throw EvalError("sqrt of a negative value", e.span_begin, e.span_end);
        v = std::sqrt(a);
      } else if (e.callee == "abs") {
        v = std::abs(a);
      } else if (e.callee == "gamma") {
        v = std::tgamma(a);
      } else if (e.callee == "pow") {
        v = std::pow(a, eval_expr(*e.args[1], t, x));
      } else {
        throw std::logic_error("eval_expr: unknown function");
      }
      if (!std::isfinite(v)) {
        throw EvalError("non-finite result of " + e.callee, e.span_begin, e.span_end);
      }
      return v;
    }
  }
  throw std::logic_error("eval_expr: unknown node kind");
}

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", e.number);
      return buf;
    }
    case Expr::Kind::Variable:
      return std::string(1, e.variable);
    case Expr::Kind::Unary:
      return "(-" + to_string(*e.lhs) + ")";
    case Expr::Kind::Binary:
      return "(" + to_string(*e.lhs) + std::string(1, e.op) + to_string(*e.rhs) + ")";
    case Expr::Kind::Call: {
      std::string s = e.callee + "(" + to_string(*e.args[0]);
      if (e.args.size() > 1) s += "," + to_string(*e.args[1]);
      return s + ")";
    }
  }
  throw std::logic_error("to_string: unknown node kind");
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Number:
      return a.number == b.number;
    case Expr::Kind::Variable:
      return a.variable == b.variable;
    case Expr::Kind::Unary:
      return a.op == b.op && equal(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
      return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    case Expr::Kind::Call:
      if (a.callee != b.callee || a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!equal(*a.args[i], *b.args[i])) return false;
      }
      return true;
  }
  return false;
}

}  // namespace fracbern
