#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsfe/multipoly.hpp"
#include "bsfe/semigroup.hpp"

namespace bsfe {

/// One homogeneous piece: x^v -> (num(v)/den(v)) x^(v+shift), with num and den
/// polynomials in theta_<x> variables.
struct GradedOperatorPiece {
  std::vector<int> shift;
  MultiPoly numerator;
  MultiPoly denominator;
};

/// Operator on a monomial algebra given by Euler-type rational functions on
/// graded pieces; models operators such as conjugates by inverses of Euler
/// operators that are not restrictions of polynomial differential operators.
class GradedOperator {
 public:
  GradedOperator(std::vector<std::string> xVars, std::vector<GradedOperatorPiece> pieces, int declaredOrder = 0);

  static GradedOperator parse(const std::vector<std::string>& xVars,
                              const std::vector<std::tuple<std::vector<int>, std::string, std::string>>& pieces,
                              int declaredOrder = 0);

  const std::vector<std::string>& xVariables() const { return x_; }
  const std::vector<std::string>& thetaNames() const { return theta_; }
  const std::vector<GradedOperatorPiece>& pieces() const { return pieces_; }
  /// Order used to size finite grids for equations involving this operator.
  int declaredOrder() const { return order_; }

  /// Coefficient of x^(v+shift) for the given piece; throws PoleError.
  Rational pieceValue(std::size_t piece, const Exponent& v) const;

 private:
  std::vector<std::string> x_, theta_;
  std::vector<GradedOperatorPiece> pieces_;
  int order_;
};

/// Applies the operator monomial by monomial. Every monomial of p must lie in
/// S; results with negative exponents must have zero coefficient.
MultiPoly applyGraded(const GradedOperator& delta, const MultiPoly& p, const Semigroup& s);

struct DenominatorCertificate {
  bool certified = false;
  std::vector<Exponent> poles;  // points of S where a denominator vanishes
  std::string method;
};

/// Decides whether every denominator is nonzero on S. Exact for denominators
/// depending on a single theta variable (rational roots, bounded by Cauchy's
/// bound, are tested for membership); otherwise the result is uncertified.
DenominatorCertificate certifyDenominators(const GradedOperator& delta, const Semigroup& s);

/// Rational roots of a univariate polynomial (distinct, sorted).
std::vector<Rational> rationalRoots(const std::vector<Rational>& coefficients);

}  // namespace bsfe
