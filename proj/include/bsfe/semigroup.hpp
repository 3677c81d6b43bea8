#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsfe/multipoly.hpp"
#include "bsfe/rational.hpp"

namespace bsfe {

using IntVector = std::vector<long>;
using IntMatrix = std::vector<IntVector>;

/// Finite abelian group acting diagonally: generator j multiplies x_i by
/// zeta_{n_j}^{w_ij}.
struct DiagonalGroup {
  std::vector<IntVector> weights;  // one weight vector (length d) per generator
  std::vector<long> orders;        // n_j >= 1
  int dimension() const;
};

/// Integer basis (rows) of the lattice spanned by the given integer rows; the
/// rows must span a lattice of full rank d.
IntMatrix latticeBasisFromGenerators(const IntMatrix& generators, int d);

/// Basis of the integer kernel {x in Z^n : M x = 0}.
std::vector<std::vector<Integer>> integerKernel(const std::vector<std::vector<Integer>>& m, int n);

/// Affine normal semigroup S = N^d ∩ L ∩ V, where L is a full-rank lattice given
/// by basis rows and V is cut out by homogeneous rational equations. A finite
/// set of gap exponents may be removed to model non-normal monomial curves.
class Semigroup {
 public:
  Semigroup(int dimension, IntMatrix latticeBasis, std::vector<RationalVector> subspaceEquations = {},
            std::vector<Exponent> gaps = {});

  static Semigroup full(int dimension);
  static Semigroup fromDiagonalGroup(const DiagonalGroup& g);

  int dimension() const { return d_; }
  const IntMatrix& latticeBasis() const { return basis_; }
  const std::vector<RationalVector>& subspaceEquations() const { return equations_; }
  const std::vector<Exponent>& gaps() const { return gaps_; }
  bool hasGaps() const { return !gaps_.empty(); }
  bool hasSubspace() const { return !equations_.empty(); }

  /// [Z^d : L] = |det(latticeBasis)|.
  const Integer& index() const { return index_; }
  /// True when S = N^d.
  bool isFull() const { return index_ == 1 && equations_.empty() && gaps_.empty(); }

  bool inLattice(const IntVector& v) const;
  bool inSubspace(const IntVector& v) const;
  /// Membership of a non-negative exponent vector.
  bool contains(const Exponent& v) const;
  /// Lattice coordinates k with v = k * basis, when v lies in L.
  std::optional<std::vector<Integer>> latticeCoordinates(const IntVector& v) const;

  /// Positive generator m_i of the projection of L to coordinate i.
  long projectionGenerator(int i) const;
  /// Lattice vector with entry 1 in coordinate i, when the projection is onto Z.
  std::optional<IntVector> unitCoordinateWitness(int i) const;
  /// Every coordinate projection of L is onto Z.
  bool projectionsSurjective() const;

  /// Irreducible elements of N^d ∩ L (requires no subspace and no gaps).
  std::vector<Exponent> hilbertBasis() const;

  std::string describe() const;

 private:
  int d_;
  IntMatrix basis_;
  std::vector<RationalVector> equations_;
  std::vector<Exponent> gaps_;
  Integer index_;
  RationalMatrix inverse_;  // basis^{-1}
};

/// Lattice of G-invariant exponents: v with sum_i v_i w_ij ≡ 0 mod n_j for all j.
Semigroup diagonalGroupToLattice(const DiagonalGroup& g);

/// Weight of a monomial under each generator, reduced mod the order.
bool isInvariantMonomial(const DiagonalGroup& g, const Exponent& v);

struct HyperplaneCheck {
  bool passes = true;  // no nonidentity element fixes a coordinate hyperplane
  std::optional<IntVector> offendingPowers;  // exponents of the generators
};

/// Checks that no nonidentity group element acts nontrivially on exactly one
/// coordinate (a diagonal pseudo-reflection fixing a coordinate hyperplane).
HyperplaneCheck fixesHyperplaneCheck(const DiagonalGroup& g);

/// Rational determinant.
Rational determinant(RationalMatrix a);

}  // namespace bsfe
