#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsfe/rational.hpp"

namespace bsfe {

using Exponent = std::vector<int>;

/// Graded lexicographic order, largest first: total degree, then lexicographic
/// in the declared variable order.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int totalDegree(const Exponent& e);
bool dividesExponent(const Exponent& a, const Exponent& b);  // a <= b componentwise

/// Multivariate polynomial with exact rational coefficients over a named
/// variable list. Terms are kept in grlex order (leading term first); zero
/// coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly constant(std::vector<std::string> variables, const Rational& c);
  static MultiPoly variable(std::vector<std::string> variables, const std::string& name);
  static MultiPoly monomial(std::vector<std::string> variables, Exponent e, const Rational& c = 1);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t numVariables() const { return vars_.size(); }
  int variableIndex(const std::string& name) const;  // -1 when absent
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  /// Constant term (coefficient of the zero exponent).
  Rational constantTerm() const;
  /// -1 for the zero polynomial.
  int totalDegree() const;
  int degreeIn(std::size_t var) const;
  Rational coefficient(const Exponent& e) const;
  const Exponent& leadingExponent() const;
  const Rational& leadingCoefficient() const;

  /// Adds c * x^e, removing the term if it cancels.
  void addTerm(const Exponent& e, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  /// Structural equality after constant promotion; throws on variable mismatch.
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Multiplies by the monomial c * x^e.
  MultiPoly mulMonomial(const Exponent& e, const Rational& c) const;
  MultiPoly pow(unsigned k) const;
  MultiPoly derivative(std::size_t var) const;
  /// k-th derivative in one variable.
  MultiPoly derivative(std::size_t var, int k) const;

  /// Partial evaluation. The result lives over the unassigned variables.
  MultiPoly evaluate(const std::map<std::string, Rational>& assignment) const;
  /// Full evaluation at a point given in declared variable order.
  Rational evaluateAt(const RationalVector& point) const;
  /// Substitutes polynomials (over `target` variables) for every variable.
  MultiPoly compose(const std::vector<MultiPoly>& images, const std::vector<std::string>& target) const;
  /// Re-expresses the polynomial over a larger variable list (matched by name).
  MultiPoly embed(const std::vector<std::string>& target) const;
  /// Drops variables that must not occur; throws if one does.
  MultiPoly restrictTo(const std::vector<std::string>& target) const;

  /// Exact quotient if `d` divides this polynomial, nullopt otherwise.
  std::optional<MultiPoly> divideExact(const MultiPoly& d) const;
  /// Division with remainder by a single divisor (grlex leading terms).
  std::pair<MultiPoly, MultiPoly> divideWithRemainder(const MultiPoly& d) const;

  /// Multiplies by the inverse of the leading coefficient.
  MultiPoly monic() const;
  /// Canonical text: grlex order, explicit '*', exponents written for k >= 2.
  std::string toString() const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
  friend void alignVariables(MultiPoly& a, MultiPoly& b);
};

/// Brings two polynomials onto one variable list; a constant operand adopts the
/// other's variables. Throws VariableMismatch otherwise.
void alignVariables(MultiPoly& a, MultiPoly& b);

/// Univariate helpers (polynomial in the single variable at index `var`).
std::vector<Rational> univariateCoefficients(const MultiPoly& p, std::size_t var = 0);
MultiPoly fromUnivariate(const std::vector<std::string>& vars, std::size_t var, const std::vector<Rational>& coeffs);

/// binom(s, k) = s(s-1)...(s-k+1)/k! in the variable `var`.
MultiPoly binomialPoly(const std::vector<std::string>& vars, std::size_t var, int k);

}  // namespace bsfe
