#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bsfe/fs_module.hpp"
#include "bsfe/semigroup.hpp"
#include "bsfe/weyl.hpp"

namespace bsfe {

/// Polynomial whose exponents (in the first d variables) all lie in S.
class SummandElement {
 public:
  /// Throws HypothesisViolated when some term lies outside S.
  SummandElement(const Semigroup& s, MultiPoly p);
  const MultiPoly& poly() const { return p_; }

 private:
  MultiPoly p_;
};

/// True when the first d coordinates of every exponent of p lie in S.
bool inSubring(const Semigroup& s, const MultiPoly& p);

/// Graded projection R -> A: drops every term whose exponent is not in S. The
/// first d variables of p are the ambient ones; any later variables (s) are
/// carried along.
MultiPoly splitBeta(const Semigroup& s, const MultiPoly& p);
LaurentLoc splitBeta(const Semigroup& s, const LaurentLoc& v);

/// Coefficientwise projection M[f^s] -> M^A[f^s]; requires f in A.
FsElement thetaSplit(const Semigroup& s, const FsElement& v);

/// a -> beta(delta(a)), an operator on A.
class RestrictedOperator {
 public:
  RestrictedOperator(Semigroup s, WeylOp delta);
  const Semigroup& semigroup() const { return s_; }
  const WeylOp& lift() const { return delta_; }
  MultiPoly apply(const MultiPoly& a) const;
  /// Action on A_F through the extension of beta to the localization.
  LaurentLoc apply(const LaurentLoc& a) const;

 private:
  Semigroup s_;
  WeylOp delta_;
};
RestrictedOperator restrictOperator(const Semigroup& s, const WeylOp& delta);

struct SubringPreservation {
  bool preserved = true;
  /// Decided for every monomial of S, not just up to the bound.
  bool exact = false;
  int degreeBound = 0;
  std::optional<Exponent> counterexample;
  std::optional<MultiPoly> image;  // delta applied to the counterexample
  std::vector<std::string> notes;
};

/// Decides whether delta maps monomials of S into A, using the graded pieces of
/// delta. Exact when S has no subspace equations or gaps; otherwise checked on
/// monomials of total degree at most degreeBound.
SubringPreservation checkPreservesSubring(const Semigroup& s, const WeylOp& delta, int degreeBound);

struct SummandIdentityResult {
  bool holds = true;
  std::optional<std::size_t> failingSample;
  std::optional<std::vector<long>> failingPoint;
  int gridBound = 0;
};

/// Checks Theta(delta.v) = (beta o delta|_A).v for each sample: both sides are
/// compared after specializing at every point of the grid {0..m}^l, the left
/// side through the formal action and the right side pointwise in A_F.
SummandIdentityResult checkDifferentialSummandIdentity(const Semigroup& s, const WeylOp& delta,
                                                       const std::vector<FsElement>& samples);

/// Semigroup description:
///   {"dimension": d, "lattice": [[..],..], "equations": [["1","-1"],..],
///    "gaps": [[..],..], "group": {"weights": [[..],..], "orders": [..]}}
/// "lattice" and "group" are alternatives; neither means N^d.
Semigroup semigroupFromJson(const nlohmann::json& j);
nlohmann::json semigroupToJson(const Semigroup& s);
Semigroup loadSemigroupFile(const std::string& path);

}  // namespace bsfe
