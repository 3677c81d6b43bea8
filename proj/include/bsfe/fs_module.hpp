#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsfe/error.hpp"
#include "bsfe/grid.hpp"
#include "bsfe/laurent.hpp"
#include "bsfe/weyl.hpp"

namespace bsfe {

/// Ambient variables, the tuple f_1..f_l and the parameter names s_1..s_l.
class FsContext {
 public:
  FsContext(std::vector<std::string> xVars, std::vector<MultiPoly> f, std::vector<std::string> sVars = {});

  const std::vector<std::string>& xVariables() const { return x_; }
  const std::vector<std::string>& sVariables() const { return s_; }
  /// x followed by s.
  const std::vector<std::string>& variables() const { return xs_; }
  const std::vector<MultiPoly>& f() const { return f_; }
  std::size_t length() const { return f_.size(); }
  /// Localization context over x and s (coefficients of M[f^s]).
  const LocContextPtr& loc() const { return loc_; }
  /// Localization context over x only (targets of specialization).
  const LocContextPtr& locX() const { return locX_; }
  /// d_r F and sum_i s_i (d_r f_i) F/f_i, over x and s.
  const MultiPoly& productDerivative(std::size_t r) const { return dF_[r]; }
  const MultiPoly& logDerivativeNumerator(std::size_t r) const { return e_[r]; }

 private:
  std::vector<std::string> x_, s_, xs_;
  std::vector<MultiPoly> f_;
  LocContextPtr loc_, locX_;
  std::vector<MultiPoly> dF_, e_;
};

using FsContextPtr = std::shared_ptr<const FsContext>;
FsContextPtr makeFsContext(std::vector<std::string> xVars, std::vector<MultiPoly> f, std::vector<std::string> sVars = {});

/// Element coeff * f_1^{s_1}...f_l^{s_l} with coeff in the localization (s allowed).
class FsElement {
 public:
  FsElement(FsContextPtr ctx, LaurentLoc coeff);
  FsElement(FsContextPtr ctx, const MultiPoly& numerator, int denomExponent = 0);

  const FsContextPtr& context() const { return ctx_; }
  const LaurentLoc& coeff() const { return coeff_; }
  bool isZero() const { return coeff_.isZero(); }
  /// Degree of the numerator in each s variable.
  std::vector<int> sDegrees() const;

  FsElement& operator+=(const FsElement& o);
  FsElement& operator-=(const FsElement& o);
  friend FsElement operator+(FsElement a, const FsElement& b) { return a += b; }
  friend FsElement operator-(FsElement a, const FsElement& b) { return a -= b; }
  friend bool operator==(const FsElement& a, const FsElement& b) { return a.coeff_ == b.coeff_; }
  friend bool operator!=(const FsElement& a, const FsElement& b) { return !(a == b); }
  FsElement reduced() const { return FsElement(ctx_, coeff_.reduced()); }
  std::string toString() const;

 private:
  FsContextPtr ctx_;
  LaurentLoc coeff_;
};

/// D[s]-action: d_r(h f^s) = (d_r h + h sum_i s_i f_i^{-1} d_r f_i) f^s,
/// extended through normal-ordered terms. The operator's s variables are
/// matched to the context's by name.
FsElement fsApply(const WeylOp& delta, const FsElement& v);

/// Substitutes s = t and multiplies by f^t (negative entries enlarge the
/// denominator).
LaurentLoc specialize(const FsElement& v, const std::vector<long>& t);

/// f^c for an integer vector c, as an element of the x-localization.
LaurentLoc fPower(const LocContextPtr& loc, const std::vector<long>& c);

enum class FeqKind { Principal, BmsMulti, Relative };
std::string toString(FeqKind k);
FeqKind parseFeqKind(const std::string& s);

struct FeqTerm {
  std::vector<long> c;
  WeylOp op;
  /// Order used for grid sizing when the operator is supplied abstractly
  /// through a callback; -1 means op.order().
  int orderHint = -1;
  int sDegreeHint = -1;
};

/// sum_c delta_c * prod_{c_i<0} binom(s_i, -c_i) f^c g f^s = b(s_1+...+s_l) g f^s.
/// Principal: l = 1, c = (1), g = 1. Relative: l = 1, c = (1), g given.
struct FeqSpec {
  FeqKind kind = FeqKind::Principal;
  std::vector<FeqTerm> terms;
  MultiPoly g;  // over x; zero-variable constant 1 by default
  MultiPoly b;  // in the single variable "s"

  void validate(std::size_t l) const;
};

struct FeqVerification {
  bool verified = false;
  std::optional<FsElement> discrepancy;    // formal route
  std::optional<std::vector<long>> witness;  // specialized route, lex-smallest
  int gridBound = 0;
  std::size_t pointsChecked = 0;
};

/// prod_{c_i<0} binom(s_i, -c_i) f^c g f^s, with g over x.
FsElement feqSource(const FsContextPtr& ctx, const std::vector<long>& c, const MultiPoly& g);
/// b(s_1+...+s_l) as a polynomial over vars, for b in the variable "s".
MultiPoly bAtSum(const MultiPoly& b, const std::vector<std::string>& vars, const std::vector<std::string>& sNames);

/// Left side minus right side as an element of M[f^s].
FsElement feqDiscrepancy(const FeqSpec& spec, const FsContextPtr& ctx);
FeqVerification verifyFeqFormal(const FeqSpec& spec, const FsContextPtr& ctx);

/// Computes delta_c(t) applied to a ring element (given as a polynomial over x).
using SpecializedAction = std::function<MultiPoly(const FeqTerm&, const std::vector<long>& t, const MultiPoly& element)>;

struct SpecializedOptions {
  std::optional<int> gridBound;  // override of the derived bound
  /// Normal form in the target ring (e.g. reduction modulo a monomial ideal).
  std::function<MultiPoly(const MultiPoly&)> normalForm;
  int threads = 1;
};

/// Raised when the action callback fails at a grid point.
class SpecializationError : public Error {
 public:
  SpecializationError(std::vector<long> t, const std::string& what);
  const std::vector<long>& point() const { return t_; }

 private:
  std::vector<long> t_;
};

/// Grid size max(deg b, max_c (s-degree + order + sum of negative |c_i|)).
int specializedGridBound(const FeqSpec& spec);

/// Checks delta(t) f^(t+c) g = b(|t|) f^t g on {0..m}^l; terms with
/// t_i + c_i < 0 carry binom(t_i, -c_i) = 0 and drop out.
FeqVerification verifyFeqSpecialized(const FeqSpec& spec, const FsContextPtr& ctx, const SpecializedAction& applyAt,
                                     const SpecializedOptions& options = {});

/// The default action on the polynomial ring: substitute s = t, apply.
SpecializedAction polynomialRingAction();

/// Grid test for localized carriers: v vanishes iff its numerator does.
bool gridZeroTest(const FsElement& v, int m);

}  // namespace bsfe
