#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsfe/monomial_ideal.hpp"
#include "bsfe/polyhedron.hpp"
#include "bsfe/semigroup.hpp"

namespace bsfe {

/// Newton polyhedron of a monomial ideal, kept as the homogenized cone
/// {(x, t) : x ∈ t * Newt(I)} cut out by rows <w, x> >= c t.
class NewtonPolyhedron {
 public:
  explicit NewtonPolyhedron(const MonomialIdeal& ideal);

  const MonomialIdeal& ideal() const { return ideal_; }
  int dimension() const { return ideal_.dimension(); }
  /// Rows (w, c) with w >= 0 and c > 0; the polyhedron is {x : <w,x> >= c}.
  const std::vector<std::pair<RationalVector, Rational>>& facets() const { return facets_; }
  bool contains(const RationalVector& x) const;
  /// max{t : v + 1 ∈ t * Newt(I)}.
  Rational threshold(const Exponent& v) const;
  /// Largest v_i of a minimal element of {v : t(v) > level} (strict) or
  /// {v : t(v) >= level}.
  Exponent scanBox(const Rational& level, bool strict) const;

 private:
  MonomialIdeal ideal_;
  std::vector<std::pair<RationalVector, Rational>> facets_;
};

/// t(v) = max{sum mu : mu >= 0, sum mu_g a_g <= v + 1}, solved as a linear
/// program. Throws for the zero and the unit ideal.
Rational jumpValue(const MonomialIdeal& ideal, const Exponent& v);

/// J(I^lambda) = <x^v : t(v) > lambda>.
MonomialIdeal multiplierMonomial(const MonomialIdeal& ideal, const Rational& lambda);
Rational lct(const MonomialIdeal& ideal);
/// Jumping numbers in (0, bound], increasing.
std::vector<Rational> jumpingNumbers(const MonomialIdeal& ideal, const Rational& bound);

/// V^alpha R = <x^v : t(v) >= alpha>.
MonomialIdeal vfilOnRing(const MonomialIdeal& ideal, const Rational& alpha);
/// V^alpha R ∩ A, as minimal elements of S.
MonomialIdeal vfilSummand(const Semigroup& s, const MonomialIdeal& ideal, const Rational& alpha);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};
struct VAxiomReport {
  std::vector<AxiomCheck> checks;
  bool allPassed() const;
  const AxiomCheck& check(const std::string& name) const;
};

/// Checks a sampled filtration (alpha increasing) against I: decreasing,
/// every change between neighbours is explained by a threshold in between,
/// I V^alpha ⊆ V^{alpha+1}, and I V^alpha = V^{alpha+1} for alpha >= d.
VAxiomReport checkVAxioms(const std::vector<std::pair<Rational, MonomialIdeal>>& sample, const MonomialIdeal& ideal);

/// I_0(f^lambda) = J(f^{lambda - eps}) = <x^v : t(v) >= lambda> for a reduced
/// monomial f (exponent vector with entries 0 or 1).
MonomialIdeal hodgeIdealZero(const Exponent& f, const Rational& lambda);

struct SummandComparison {
  MonomialIdeal intersection;  // J_R((IR)^lambda) ∩ A
  std::optional<MonomialIdeal> intrinsic;  // when A is a polynomial ring in its Hilbert basis
  std::optional<bool> match;
  bool extensible = false;  // coordinate projections of L are onto
  std::vector<Exponent> hilbertBasis;
  std::string note;
};

SummandComparison summandComparisonReport(const Semigroup& s, const MonomialIdeal& ideal, const Rational& lambda);

}  // namespace bsfe
