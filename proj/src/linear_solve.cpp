#include "bsfe/linear_solve.hpp"

#include <algorithm>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

// Integer row; column numColumns holds the right-hand side.
using IntRow = std::vector<std::pair<int, Integer>>;

void normalizeContent(IntRow& row) {
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// row <- a*row - b*pivot, where a = pivot leading coefficient and b = row entry
// at the pivot column; both rows sorted by column.
IntRow eliminate(const IntRow& row, const IntRow& pivot, const Integer& a, const Integer& b) {
  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  Integer t;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, a * row[i].second);
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -b * pivot[j].second);
      ++j;
    } else {
      t = a * row[i].second - b * pivot[j].second;
      if (t != 0) out.emplace_back(row[i].first, t);
      ++i;
      ++j;
    }
  }
  normalizeContent(out);
  return out;
}

IntRow toIntegerRow(const SparseRow& row, const Rational& rhs, int numColumns) {
  Integer l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rhs.get_den_mpz_t());
  IntRow out;
  for (const auto& [c, v] : row) {
    if (c < 0 || c >= numColumns) throw InvalidArgument("column index out of range");
    if (v == 0) continue;
    out.emplace_back(c, Integer(v.get_num() * (l / v.get_den())));
  }
  if (rhs != 0) out.emplace_back(numColumns, Integer(rhs.get_num() * (l / rhs.get_den())));
  normalizeContent(out);
  return out;
}

const Integer* entryAt(const IntRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace

void SparseSystem::addRow(SparseRow row, Rational value) {
  rows.push_back(std::move(row));
  rhs.push_back(std::move(value));
}

std::optional<LinearSolution> solveSparse(const SparseSystem& system) {
  const int n = system.numColumns;
  if (system.rows.size() != system.rhs.size()) throw InvalidArgument("row count differs from right-hand side length");
  std::map<int, IntRow> pivots;  // pivot column -> row with that leading column
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    IntRow row = toIntegerRow(system.rows[r], system.rhs[r], n);
    while (!row.empty() && row.front().first < n) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      Integer a = it->second.front().second, b = row.front().second;
      Integer g = gcd(a, b);
      row = eliminate(row, it->second, a / g, b / g);
    }
    if (row.empty()) continue;
    if (row.front().first == n) return std::nullopt;  // 0 = nonzero
    if (row.front().second < 0)
      for (auto& e : row) e.second = -e.second;
    pivots.emplace(row.front().first, std::move(row));
  }
  // Back substitution to reduced echelon form, highest pivot first.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    int pc = it->first;
    const IntRow& prow = it->second;
    for (auto jt = pivots.begin(); jt->first != pc; ++jt) {
      const Integer* e = entryAt(jt->second, pc);
      if (!e) continue;
      Integer a = prow.front().second, b = *e;
      Integer g = gcd(a, b);
      jt->second = eliminate(jt->second, prow, a / g, b / g);
    }
  }
  LinearSolution sol;
  sol.particular.assign(n, Rational(0));
  sol.rank = static_cast<int>(pivots.size());
  std::vector<bool> isPivot(n, false);
  for (const auto& [pc, row] : pivots) {
    isPivot[pc] = true;
    sol.pivotColumns.push_back(pc);
    const Integer* r = entryAt(row, n);
    if (r) {
      sol.particular[pc] = Rational(*r, row.front().second);
      sol.particular[pc].canonicalize();
    }
  }
  for (int j = 0; j < n; ++j) {
    if (isPivot[j]) continue;
    RationalVector v(n, Rational(0));
    v[j] = 1;
    for (const auto& [pc, row] : pivots) {
      const Integer* e = entryAt(row, j);
      if (!e) continue;
      v[pc] = Rational(-*e, row.front().second);
      v[pc].canonicalize();
    }
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

std::optional<LinearSolution> solveLinearExact(const RationalMatrix& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("matrix row count differs from right-hand side length");
  SparseSystem sys;
  sys.numColumns = a.empty() ? 0 : static_cast<int>(a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (static_cast<int>(a[i].size()) != sys.numColumns) throw InvalidArgument("ragged matrix");
    SparseRow row;
    for (int j = 0; j < sys.numColumns; ++j)
      if (a[i][j] != 0) row[j] = a[i][j];
    sys.addRow(std::move(row), b[i]);
  }
  return solveSparse(sys);
}

}  // namespace bsfe
