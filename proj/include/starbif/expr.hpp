// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "starbif/errors.hpp"
#include "starbif/potential.hpp"

namespace starbif {

/// Expression AST over the variables x, y, rho ('rho' means |x|).
/// Grammar:
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | 'x' | 'y' | 'rho' | '(' expr ')' | func '(' expr ')'
///   func   := sin | cos | exp | abs
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Number, VarX, VarY, VarRho, Add, Sub, Mul, Div, Pow, Neg, Call };
  Kind kind;
  double value = 0.0;       // Number
  int exponent = 0;         // Pow
  std::string func;         // Call: sin, cos, exp, abs
  ExprPtr lhs, rhs;
};

/// Parse error position is 1-based within the input string.
struct ExprParseError : ConfigError {
  ExprParseError(const std::string& msg, std::size_t position)
      : ConfigError(msg + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

ExprPtr parse_expression(const std::string& text);

/// Canonical rendering; parse(render(e)) is structurally equal to e.
std::string render_expression(const ExprPtr& e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Evaluate at a 1D coordinate: x = s, rho = |s| (interval), or at a
/// radial coordinate: rho = s, with 'x'/'y' rejected (disk).
double eval_expression(const ExprPtr& e, double s, int dimension);

/// True if the expression references 'x' or 'y'.
bool expr_uses_cartesian(const ExprPtr& e);
bool expr_uses_y(const ExprPtr& e);

/// Builds a PotentialField from expression text for the given dimension.
/// dimension 1: 'x' and 'rho' allowed. dimension 2: only 'rho' (radial
/// coefficients; 'x'/'y' rejected with a diagnostic). The derivative is a
/// central finite difference with step 1e-5 * domain_diameter.
PotentialField parse_potential_expr(const std::string& text, int dimension,
                                    double domain_diameter);

}  // namespace starbif
