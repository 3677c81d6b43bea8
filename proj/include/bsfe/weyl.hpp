#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsfe/laurent.hpp"
#include "bsfe/monomial_ideal.hpp"
#include "bsfe/multipoly.hpp"

namespace bsfe {

/// Element of the Weyl algebra in x_1..x_d with central parameters s_1..s_l,
/// stored in normal order: sum over b of c_b(x, s) * d^b.
class WeylOp {
 public:
  using TermMap = std::map<Exponent, MultiPoly, GrlexGreater>;

  WeylOp() = default;
  WeylOp(std::vector<std::string> xVars, std::vector<std::string> sVars);

  static WeylOp fromPoly(std::vector<std::string> xVars, std::vector<std::string> sVars, const MultiPoly& c);
  static WeylOp partial(std::vector<std::string> xVars, std::vector<std::string> sVars, std::size_t var, int k = 1);
  /// Single normal-ordered term c * x^a * d^b * s^g.
  static WeylOp term(std::vector<std::string> xVars, std::vector<std::string> sVars, const Exponent& a,
                     const Exponent& b, const Exponent& g, const Rational& c);

  const std::vector<std::string>& xVariables() const { return x_; }
  const std::vector<std::string>& sVariables() const { return s_; }
  /// x variables followed by s variables: the coefficient ring.
  const std::vector<std::string>& coefficientVariables() const { return xs_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  /// Maximal |b| over the terms; -1 for the zero operator.
  int order() const;
  /// Maximal total degree in the s variables.
  int sDegree() const;
  /// Maximal degree in s_i.
  int sDegreeIn(std::size_t i) const;
  /// Coefficient of d^b.
  MultiPoly coefficient(const Exponent& b) const;

  void addTerm(const Exponent& b, const MultiPoly& c);

  WeylOp& operator+=(const WeylOp& o);
  WeylOp& operator-=(const WeylOp& o);
  WeylOp operator-() const;
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  friend WeylOp operator*(const WeylOp& a, const WeylOp& b);
  friend WeylOp operator*(WeylOp a, const Rational& c);
  friend bool operator==(const WeylOp& a, const WeylOp& b);
  friend bool operator!=(const WeylOp& a, const WeylOp& b) { return !(a == b); }

  /// Substitutes s = t; the result has no s variables.
  WeylOp specializeS(const std::vector<long>& t) const;
  WeylOp specializeS(const RationalVector& t) const;
  /// Re-expresses the operator over other s variables (names matched; used to
  /// drop unused parameters or add new ones).
  WeylOp withSVariables(const std::vector<std::string>& sVars) const;

  /// Text such as "1/4*d_x^2 + x*d_x*d_y"; coefficients are parenthesized when
  /// they have several terms.
  std::string toString() const;

 private:
  std::vector<std::string> x_, s_, xs_;
  TermMap terms_;
  void checkSame(const WeylOp& o) const;
};

WeylOp weylMultiply(const WeylOp& a, const WeylOp& b);
WeylOp weylCommutator(const WeylOp& a, const WeylOp& b);

/// Parses the operator grammar: the polynomial grammar over x and s plus
/// derivative symbols d_<x>; products are composed in the Weyl algebra.
WeylOp parseWeylOp(const std::string& text, const std::vector<std::string>& xVars,
                   const std::vector<std::string>& sVars = {});

/// Action on a polynomial over the x variables, or over x followed by the s
/// variables (s is central, so it is carried along untouched).
MultiPoly applyWeyl(const WeylOp& delta, const MultiPoly& p);
/// Action after substituting an s assignment; throws when s variables occur and
/// no assignment is given.
MultiPoly applyWeyl(const WeylOp& delta, const MultiPoly& p, const std::optional<RationalVector>& sValues);

/// Action on h / F^t by induction on the order:
/// delta(h/F^t) = (delta(h) - [delta, F^t](h/F^t)) / F^t.
LaurentLoc applyLocalized(const WeylOp& delta, const LaurentLoc& v);

/// Decomposition by x-degree shift mu = a - b: on x^v a piece acts as
/// c_mu(v) x^(v+mu), with c_mu a polynomial in theta_<x> (and s).
struct GradedPiece {
  std::vector<int> shift;
  MultiPoly coefficient;  // over thetaVariables(x) followed by s
};
std::vector<std::string> thetaVariables(const std::vector<std::string>& xVars);
std::vector<GradedPiece> gradedPieces(const WeylOp& delta);

/// Axis-aligned region {v : v_i = fixed_i for i not free, v_j >= lower_j for free j}.
struct ExponentRegion {
  std::vector<int> shift;
  std::vector<int> values;  // fixed value, or the lower bound on free coordinates
  std::vector<bool> free;
};

struct PreservationResult {
  bool preserved = true;
  std::vector<ExponentRegion> regions;  // every bad region examined
  std::optional<Exponent> witness;      // monomial of I mapped outside I
  std::optional<MultiPoly> witnessImage;
  std::optional<RationalVector> witnessS;  // s values at which the witness fails
};

/// Decides whether delta maps the monomial ideal I into itself (for all s when
/// delta has s variables).
PreservationResult preservesIdeal(const WeylOp& delta, const MonomialIdeal& ideal);

}  // namespace bsfe
