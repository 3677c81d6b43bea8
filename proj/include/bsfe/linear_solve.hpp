#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bsfe/rational.hpp"

namespace bsfe {

/// Sparse row: column index -> coefficient.
using SparseRow = std::map<int, Rational>;

struct SparseSystem {
  int numColumns = 0;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;

  void addRow(SparseRow row, Rational value);
};

/// Solution set x0 + span(nullspace). Free variables are zero in x0.
struct LinearSolution {
  RationalVector particular;
  std::vector<RationalVector> nullspace;
  std::vector<int> pivotColumns;
  int rank = 0;
};

/// Fraction-free elimination over the integers. Rows are cleared of
/// denominators, reduced one after another against the pivots found so far
/// (pivot = leading column of the reduced row) and divided by their content
/// after every step. Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> solveSparse(const SparseSystem& system);

std::optional<LinearSolution> solveLinearExact(const RationalMatrix& a, const RationalVector& b);

}  // namespace bsfe
