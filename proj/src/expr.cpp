// SPDX-License-Identifier: Apache-2.0
#include "starbif/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace starbif {

namespace {

using Kind = ExprNode::Kind;

ExprPtr node(Kind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

ExprPtr number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Number;
  n->value = v;
  return n;
}

ExprPtr unary(Kind k, ExprPtr child) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(child);
  return n;
}

ExprPtr binary(Kind k, ExprPtr l, ExprPtr r) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ExprParseError(what, pos_ + 1);  // 1-based
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr e;
    if (accept('-')) {
      e = unary(Kind::Neg, term());
    } else {
      accept('+');
      e = term();
    }
    while (true) {
      if (accept('+'))
        e = binary(Kind::Add, e, term());
      else if (accept('-'))
        e = binary(Kind::Sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (true) {
      if (accept('*'))
        e = binary(Kind::Mul, e, factor());
      else if (accept('/'))
        e = binary(Kind::Div, e, factor());
      else
        return e;
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (accept('^')) {
      auto p = std::make_shared<ExprNode>();
      p->kind = Kind::Pow;
      p->lhs = b;
      p->exponent = integer();
      return p;
    }
    return b;
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer exponent");
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::atoi(text_.substr(start, pos_ - start).c_str());
  }

  ExprPtr base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return numeric();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return symbol();
    fail("expected number, variable, function or '('");
  }

  ExprPtr numeric() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    // exponent part: e[+-]?digits
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belonged to an identifier, not this literal
      }
    }
    return number(std::strtod(text_.substr(start, pos_ - start).c_str(), nullptr));
  }

  ExprPtr symbol() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "x") return node(Kind::VarX);
    if (name == "y") return node(Kind::VarY);
    if (name == "rho") return node(Kind::VarRho);
    if (name == "sin" || name == "cos" || name == "exp" || name == "abs") {
      expect('(');
      ExprPtr arg = expr();
      expect(')');
      auto call = std::make_shared<ExprNode>();
      call->kind = Kind::Call;
      call->func = name;
      call->lhs = arg;
      return call;
    }
    pos_ = start;
    fail("unknown symbol '" + name + "'");
  }
};

double powi(double base, int e) {
  if (e < 0) return 1.0 / powi(base, -e);
  double acc = 1.0, p = base;
  for (int k = e; k > 0; k >>= 1) {
    if (k & 1) acc *= p;
    p *= p;
  }
  return acc;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Grammar levels for parenthesization during rendering.
enum Level { kExpr = 0, kTerm = 1, kFactor = 2, kBase = 3 };

Level natural_level(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::Add:
    case Kind::Sub:
    case Kind::Neg:
      return kExpr;
    case Kind::Mul:
    case Kind::Div:
      return kTerm;
    case Kind::Pow:
      return kFactor;
    default:
      return kBase;
  }
}

void render(const ExprPtr& e, Level need, std::string& out) {
  const bool parens = natural_level(e) < need;
  if (parens) out += '(';
  switch (e->kind) {
    case Kind::Number:
      out += format_number(e->value);
      break;
    case Kind::VarX:
      out += 'x';
      break;
    case Kind::VarY:
      out += 'y';
      break;
    case Kind::VarRho:
      out += "rho";
      break;
    case Kind::Neg:
      out += '-';
      render(e->lhs, kTerm, out);
      break;
    case Kind::Add:
      render(e->lhs, kExpr, out);
      out += " + ";
      render(e->rhs, kTerm, out);
      break;
    case Kind::Sub:
      render(e->lhs, kExpr, out);
      out += " - ";
      render(e->rhs, kTerm, out);
      break;
    case Kind::Mul:
      render(e->lhs, kTerm, out);
      out += " * ";
      render(e->rhs, kFactor, out);
      break;
    case Kind::Div:
      render(e->lhs, kTerm, out);
      out += " / ";
      render(e->rhs, kFactor, out);
      break;
    case Kind::Pow:
      render(e->lhs, kBase, out);
      out += '^';
      out += std::to_string(e->exponent);
      break;
    case Kind::Call:
      out += e->func;
      out += '(';
      render(e->lhs, kExpr, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

std::string render_expression(const ExprPtr& e) {
  std::string out;
  render(e, kExpr, out);
  return out;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::Number:
      return a->value == b->value;
    case ExprNode::Kind::Pow:
      return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    case ExprNode::Kind::Call:
      return a->func == b->func && expr_equal(a->lhs, b->lhs);
    case ExprNode::Kind::VarX:
    case ExprNode::Kind::VarY:
    case ExprNode::Kind::VarRho:
      return true;
    case ExprNode::Kind::Neg:
      return expr_equal(a->lhs, b->lhs);
    default:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

double eval_expression(const ExprPtr& e, double s, int dimension) {
  switch (e->kind) {
    case ExprNode::Kind::Number:
      return e->value;
    case ExprNode::Kind::VarX:
      if (dimension != 1) throw NumericalFailure("'x' is not defined for radial evaluation");
      return s;
    case ExprNode::Kind::VarY:
      throw NumericalFailure("'y' has no value along the evaluation coordinate");
    case ExprNode::Kind::VarRho:
      return std::fabs(s);
    case ExprNode::Kind::Neg:
      return -eval_expression(e->lhs, s, dimension);
    case ExprNode::Kind::Add:
      return eval_expression(e->lhs, s, dimension) + eval_expression(e->rhs, s, dimension);
    case ExprNode::Kind::Sub:
      return eval_expression(e->lhs, s, dimension) - eval_expression(e->rhs, s, dimension);
    case ExprNode::Kind::Mul:
      return eval_expression(e->lhs, s, dimension) * eval_expression(e->rhs, s, dimension);
    case ExprNode::Kind::Div:
      return eval_expression(e->lhs, s, dimension) / eval_expression(e->rhs, s, dimension);
    case ExprNode::Kind::Pow:
      return powi(eval_expression(e->lhs, s, dimension), e->exponent);
    case ExprNode::Kind::Call: {
      const double v = eval_expression(e->lhs, s, dimension);
      if (e->func == "sin") return std::sin(v);
      if (e->func == "cos") return std::cos(v);
      if (e->func == "exp") return std::exp(v);
      return std::fabs(v);  // abs
    }
  }
  return 0.0;
}

bool expr_uses_cartesian(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprNode::Kind::VarX || e->kind == ExprNode::Kind::VarY) return true;
  return expr_uses_cartesian(e->lhs) || expr_uses_cartesian(e->rhs);
}

bool expr_uses_y(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprNode::Kind::VarY) return true;
  return expr_uses_y(e->lhs) || expr_uses_y(e->rhs);
}

PotentialField parse_potential_expr(const std::string& text, int dimension,
                                    double domain_diameter) {
  ExprPtr ast = parse_expression(text);
  if (dimension == 1) {
    if (expr_uses_y(ast)) throw ConfigError("'y' is not valid in a 1D potential expression");
  } else {
    if (expr_uses_cartesian(ast))
      throw ConfigError(
          "disk potentials must be radial: use 'rho' instead of 'x'/'y' in the expression");
  }
  const double fd_step = 1e-5 * domain_diameter;
  const std::string rendered = render_expression(ast);
  auto eval = [ast, dimension](double s) { return eval_expression(ast, s, dimension); };
  return PotentialField::from_callable(std::move(eval), rendered, fd_step);
}

}  // namespace starbif
