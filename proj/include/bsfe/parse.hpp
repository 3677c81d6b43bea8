#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bsfe/multipoly.hpp"

namespace bsfe {

/// Expression tree shared by the polynomial and operator grammars.
struct ExprNode {
  enum class Kind { Number, Symbol, Add, Sub, Mul, Neg, Pow };
  Kind kind;
  Rational value;           // Number
  std::string name;         // Symbol
  int exponent = 0;         // Pow
  int line = 1, column = 1;
  std::vector<std::unique_ptr<ExprNode>> children;
};

/// Parses `expr := term (('+'|'-') term)*`, `term := unary ('*' unary)*`,
/// `unary := ('-'|'+') unary | power`, `power := atom ('^' int)?`,
/// `atom := int ('/' int)? | ident | '(' expr ')'`.
std::unique_ptr<ExprNode> parseExpression(const std::string& text);

/// Parses a polynomial over the declared variables; unknown symbols are errors.
MultiPoly parsePolynomial(const std::string& text, const std::vector<std::string>& variables);

}  // namespace bsfe
