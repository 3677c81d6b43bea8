#pragma once

#include <vector>

#include "bsfe/rational.hpp"

namespace bsfe {

/// <normal, x> >= bound, or > bound when strict.
struct Inequality {
  RationalVector normal;
  Rational bound;
  bool strict = false;
};

class PolyhedronQ {
 public:
  explicit PolyhedronQ(int dimension) : dim_(dimension) {}

  int dimension() const { return dim_; }
  const std::vector<Inequality>& inequalities() const { return rows_; }

  void addInequality(RationalVector normal, Rational bound, bool strict = false);
  /// Adds <normal, x> <= bound (or < bound).
  void addUpperBound(RationalVector normal, Rational bound, bool strict = false);
  void addEquality(const RationalVector& normal, const Rational& value);
  /// x_i >= 0 for every coordinate.
  void addNonnegativity();

  bool contains(const RationalVector& x) const;

 private:
  int dim_;
  std::vector<Inequality> rows_;
};

/// Projects out coordinate `var` by Fourier-Motzkin elimination; the returned
/// system still has the same dimension with a zero column at `var`.
std::vector<Inequality> eliminateVariable(const std::vector<Inequality>& rows, int var);

bool polyhedronFeasible(const PolyhedronQ& p);

struct LinearOptimum {
  enum class Status { Optimal, Unbounded, Infeasible };
  Status status = Status::Infeasible;
  Rational value;         // supremum when Optimal
  bool attained = false;  // false when the supremum comes from a strict bound
};

LinearOptimum maximizeLinear(const PolyhedronQ& p, const RationalVector& objective);

}  // namespace bsfe
