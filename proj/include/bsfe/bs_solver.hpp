#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsfe/error.hpp"
#include "bsfe/fs_module.hpp"
#include "bsfe/semigroup.hpp"

namespace bsfe {

/// Bounds of the operator ansatz sum_c sum u * x^a s^e d^b acting on the
/// c-th source element.
struct AnsatzSpec {
  int maxOrder = 1;        // |b|
  int maxSDegree = 0;      // |e|
  int maxCoeffDegree = 0;  // |a|
  int maxBDegree = 4;
  FeqKind kind = FeqKind::Principal;
  /// Exponent shifts c with |c| = 1; empty means (1) for l = 1 and the unit
  /// vectors otherwise.
  std::vector<std::vector<long>> cVectors;
  /// Keep only terms x^a d^b mapping the subring into itself.
  std::optional<Semigroup> subring;
  std::size_t maxUnknowns = 20000;
  /// Drop terms of nonzero degree for the grading in which f and g are
  /// homogeneous; such terms can be set to zero in any solution.
  bool gradingFilter = true;

  void validate(std::size_t l) const;
  std::vector<std::vector<long>> shifts(std::size_t l) const;
};

struct BsResult {
  MultiPoly b;  // monic, in "s"
  FeqSpec witness;
  FeqVerification certificate;  // recomputed on the witness
  bool minimalWithinBounds = false;
  std::vector<int> infeasibleDegrees;  // every degree below deg b
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

/// No b of degree <= maxBDegree exists for operators within the ansatz; this
/// says nothing about larger ansatz bounds.
class NotFoundWithinBounds : public Error {
 public:
  NotFoundWithinBounds(const std::string& what, std::size_t unknowns)
      : Error(what), unknowns_(unknowns) {}
  std::size_t unknowns() const { return unknowns_; }

 private:
  std::size_t unknowns_;
};

/// Searches for the monic b of least degree admitting an operator within the
/// ansatz. g defaults to 1.
BsResult searchFeq(const std::vector<std::string>& xVars, const std::vector<MultiPoly>& f, const MultiPoly& g,
                   const AnsatzSpec& ansatz);

struct MustataLift {
  std::vector<std::string> variables;   // x followed by the new variables
  std::vector<std::string> newVariables;
  MultiPoly h;  // sum_i y_i f_i
  MultiPoly g;
};

/// h = y_1 f_1 + ... + y_l f_l over x and fresh variables y_1..y_l.
MustataLift mustataLift(const std::vector<std::string>& xVars, const std::vector<MultiPoly>& f,
                        const MultiPoly& g = MultiPoly());

/// Exact quotient b/(s+1); throws InvalidArgument when (s+1) does not divide b.
MultiPoly divideBySPlusOne(const MultiPoly& b);

struct RootFactorization {
  std::vector<std::pair<Rational, int>> roots;  // rational roots with multiplicity, increasing
  MultiPoly rest;  // cofactor without rational roots (constant when b splits over Q)
};
RootFactorization factorRationalRoots(const MultiPoly& b);

/// Minus the largest root of b/(s+1); nullopt when b/(s+1) has no roots.
/// Throws HypothesisViolated when some root is not rational.
std::optional<Rational> minimalExponent(const MultiPoly& b);

}  // namespace bsfe
