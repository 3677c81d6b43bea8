#include "bsfe/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bsfe/error.hpp"
#include "bsfe/linear_solve.hpp"
#include "bsfe/monomial_ideal.hpp"

namespace bsfe {

int DiagonalGroup::dimension() const { return weights.empty() ? 0 : static_cast<int>(weights[0].size()); }

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

namespace {

// Row echelon form over Z by extended-gcd row operations.
std::vector<std::vector<Integer>> integerEchelon(std::vector<std::vector<Integer>> rows, int n) {
  std::vector<std::vector<Integer>> out;
  for (int c = 0; c < n && !rows.empty(); ++c) {
    // Combine all rows with a nonzero entry in column c into one pivot row.
    std::vector<std::vector<Integer>> rest;
    std::optional<std::vector<Integer>> pivot;
    for (auto& r : rows) {
      if (r[c] == 0) {
        rest.push_back(std::move(r));
        continue;
      }
      if (!pivot) {
        pivot = std::move(r);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), (*pivot)[c].get_mpz_t(), r[c].get_mpz_t());
      Integer a = (*pivot)[c] / g, b = r[c] / g;
      std::vector<Integer> np(n), nr(n);
      for (int k = 0; k < n; ++k) {
        np[k] = s * (*pivot)[k] + t * r[k];
        nr[k] = a * r[k] - b * (*pivot)[k];
      }
      pivot = std::move(np);
      if (std::any_of(nr.begin(), nr.end(), [](const Integer& x) { return x != 0; })) rest.push_back(std::move(nr));
    }
    rows = std::move(rest);
    if (pivot) {
      if ((*pivot)[c] < 0)
        for (auto& x : *pivot) x = -x;
      out.push_back(std::move(*pivot));
    }
  }
  return out;
}

}  // namespace

IntMatrix latticeBasisFromGenerators(const IntMatrix& generators, int d) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != d) throw InvalidArgument("lattice generator has wrong dimension");
    std::vector<Integer> r;
    for (long x : g) r.emplace_back(x);
    rows.push_back(std::move(r));
  }
  auto ech = integerEchelon(std::move(rows), d);
  if (static_cast<int>(ech.size()) != d) throw InvalidArgument("lattice generators do not span a full-rank lattice");
  // Reduce entries above the pivots for a canonical (Hermite) form.
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < c; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), ech[r][c].get_mpz_t(), ech[c][c].get_mpz_t());
      if (q != 0)
        for (int k = 0; k < d; ++k) ech[r][k] -= q * ech[c][k];
    }
  }
  IntMatrix out;
  for (const auto& r : ech) {
    IntVector v;
    for (const auto& x : r) {
      if (!x.fits_slong_p()) throw CapExceeded("lattice basis entry exceeds machine integers");
      v.push_back(x.get_si());
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Integer>> integerKernel(const std::vector<std::vector<Integer>>& m, int n) {
  // Column operations on M, tracked in a unimodular U with M U = H.
  std::vector<std::vector<Integer>> h = m;  // rows of M
  std::vector<std::vector<Integer>> u(n, std::vector<Integer>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  auto colOp = [&](int a, int b, const Integer& s, const Integer& t, const Integer& p, const Integer& q) {
    // (col a, col b) <- (s*a + t*b, p*a + q*b)
    for (auto& row : h) {
      Integer x = row[a], y = row[b];
      row[a] = s * x + t * y;
      row[b] = p * x + q * y;
    }
    for (auto& row : u) {
      Integer x = row[a], y = row[b];
      row[a] = s * x + t * y;
      row[b] = p * x + q * y;
    }
  };
  int pivotCol = 0;
  for (std::size_t r = 0; r < h.size() && pivotCol < n; ++r) {
    for (int c = pivotCol + 1; c < n; ++c) {
      if (h[r][c] == 0) continue;
      if (h[r][pivotCol] == 0) {
        colOp(pivotCol, c, 0, 1, 1, 0);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[r][pivotCol].get_mpz_t(), h[r][c].get_mpz_t());
      Integer a = h[r][pivotCol] / g, b = h[r][c] / g;
      colOp(pivotCol, c, s, t, -b, a);
    }
    if (h[r][pivotCol] != 0) ++pivotCol;
  }
  std::vector<std::vector<Integer>> kernel;
  for (int c = pivotCol; c < n; ++c) {
    std::vector<Integer> v(n);
    for (int i = 0; i < n; ++i) v[i] = u[i][c];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

Semigroup::Semigroup(int dimension, IntMatrix latticeBasis, std::vector<RationalVector> subspaceEquations,
                     std::vector<Exponent> gaps)
    : d_(dimension), basis_(std::move(latticeBasis)), equations_(std::move(subspaceEquations)), gaps_(std::move(gaps)) {
  if (d_ < 1) throw InvalidArgument("semigroup dimension must be positive");
  if (static_cast<int>(basis_.size()) != d_) throw InvalidArgument("lattice basis must have d rows");
  RationalMatrix b(d_, RationalVector(d_));
  for (int i = 0; i < d_; ++i) {
    if (static_cast<int>(basis_[i].size()) != d_) throw InvalidArgument("lattice basis must be square");
    for (int j = 0; j < d_; ++j) b[i][j] = basis_[i][j];
  }
  Rational det = determinant(b);
  if (det == 0) throw InvalidArgument("lattice basis is singular");
  index_ = Rational(abs(det)).get_num();
  for (const auto& e : equations_)
    if (static_cast<int>(e.size()) != d_) throw InvalidArgument("subspace equation has wrong dimension");
  for (const auto& g : gaps_)
    if (static_cast<int>(g.size()) != d_) throw InvalidArgument("gap exponent has wrong dimension");
  // inverse_: solve X * B = I row by row, i.e. B^T x = e_i.
  RationalMatrix bt(d_, RationalVector(d_));
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) bt[i][j] = b[j][i];
  inverse_.assign(d_, RationalVector(d_));
  for (int i = 0; i < d_; ++i) {
    RationalVector e(d_, Rational(0));
    e[i] = 1;
    auto sol = solveLinearExact(bt, e);
    for (int j = 0; j < d_; ++j) inverse_[i][j] = sol->particular[j];
  }
}

Semigroup Semigroup::full(int dimension) {
  IntMatrix id(dimension, IntVector(dimension, 0));
  for (int i = 0; i < dimension; ++i) id[i][i] = 1;
  return Semigroup(dimension, std::move(id));
}

Semigroup Semigroup::fromDiagonalGroup(const DiagonalGroup& g) { return diagonalGroupToLattice(g); }

std::optional<std::vector<Integer>> Semigroup::latticeCoordinates(const IntVector& v) const {
  if (static_cast<int>(v.size()) != d_) throw InvalidArgument("exponent has wrong dimension");
  std::vector<Integer> k(d_);
  for (int j = 0; j < d_; ++j) {
    Rational s = 0;
    for (int i = 0; i < d_; ++i) s += Rational(v[i]) * inverse_[i][j];
    if (!isInteger(s)) return std::nullopt;
    k[j] = s.get_num();
  }
  return k;
}

bool Semigroup::inLattice(const IntVector& v) const { return latticeCoordinates(v).has_value(); }

bool Semigroup::inSubspace(const IntVector& v) const {
  for (const auto& e : equations_) {
    Rational s = 0;
    for (int i = 0; i < d_; ++i) s += e[i] * v[i];
    if (s != 0) return false;
  }
  return true;
}

bool Semigroup::contains(const Exponent& v) const {
  if (static_cast<int>(v.size()) != d_) throw InvalidArgument("exponent has wrong dimension " + formatVector(v));
  for (int x : v)
    if (x < 0) return false;
  IntVector w(v.begin(), v.end());
  if (!inLattice(w) || !inSubspace(w)) return false;
  return std::find(gaps_.begin(), gaps_.end(), v) == gaps_.end();
}

long Semigroup::projectionGenerator(int i) const {
  long g = 0;
  for (const auto& row : basis_) g = std::gcd(g, std::labs(row[i]));
  return g;
}

std::optional<IntVector> Semigroup::unitCoordinateWitness(int i) const {
  // Extended gcd over column i gives the combination of basis rows.
  Integer g = 0;
  std::vector<Integer> coeff(d_, 0);
  for (int r = 0; r < d_; ++r) {
    Integer a = basis_[r][i];
    if (a == 0) continue;
    if (g == 0) {
      g = a;
      coeff[r] = 1;
      continue;
    }
    Integer ng, s, t;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    for (int q = 0; q < r; ++q) coeff[q] *= s;
    coeff[r] = t;
    g = ng;
  }
  if (abs(g) != 1) return std::nullopt;
  IntVector v(d_, 0);
  for (int j = 0; j < d_; ++j) {
    Integer s = 0;
    for (int r = 0; r < d_; ++r) s += coeff[r] * basis_[r][j];
    if (g < 0) s = -s;
    v[j] = s.get_si();
  }
  return v;
}

bool Semigroup::projectionsSurjective() const {
  for (int i = 0; i < d_; ++i)
    if (projectionGenerator(i) != 1) return false;
  return true;
}

std::vector<Exponent> Semigroup::hilbertBasis() const {
  if (hasSubspace() || hasGaps()) throw InvalidArgument("Hilbert basis computed only for N^d ∩ L");
  if (!index_.fits_slong_p() || index_ > 64) throw CapExceeded("lattice index too large for Hilbert basis enumeration");
  const int n = static_cast<int>(index_.get_si());
  // n Z^d ⊆ L, so irreducibles have coordinates <= n.
  std::vector<Exponent> elems;
  forEachInBox(Exponent(d_, n), [&](const Exponent& v) {
    if (totalDegree(v) > 0 && contains(v)) elems.push_back(v);
  });
  std::sort(elems.begin(), elems.end(), [](const Exponent& a, const Exponent& b) {
    int da = totalDegree(a), db = totalDegree(b);
    return da != db ? da < db : a < b;
  });
  std::vector<Exponent> irreducible;
  for (const auto& v : elems) {
    bool reducible = false;
    for (const auto& h : irreducible) {
      if (!dividesExponent(h, v)) continue;
      Exponent r(d_);
      for (int i = 0; i < d_; ++i) r[i] = v[i] - h[i];
      if (totalDegree(r) > 0 && contains(r)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) irreducible.push_back(v);
  }
  return irreducible;
}

std::string Semigroup::describe() const {
  std::ostringstream os;
  os << "N^" << d_ << " ∩ L, L rows:";
  for (const auto& r : basis_) {
    os << " (";
    for (int i = 0; i < d_; ++i) os << (i ? "," : "") << r[i];
    os << ")";
  }
  os << ", index " << index_.get_str();
  if (!equations_.empty()) os << ", " << equations_.size() << " subspace equation(s)";
  if (!gaps_.empty()) os << ", " << gaps_.size() << " gap(s)";
  return os.str();
}

Semigroup diagonalGroupToLattice(const DiagonalGroup& g) {
  if (g.weights.size() != g.orders.size()) throw InvalidArgument("one order per group generator required");
  const int d = g.dimension();
  if (d == 0) throw InvalidArgument("group without generators: give the dimension via a trivial generator");
  const int k = static_cast<int>(g.weights.size());
  // Kernel of [W | -diag(n)]: (v, y) with W v = diag(n) y.
  std::vector<std::vector<Integer>> m(k, std::vector<Integer>(d + k, 0));
  for (int j = 0; j < k; ++j) {
    if (g.orders[j] < 1) throw InvalidArgument("group orders must be positive");
    if (static_cast<int>(g.weights[j].size()) != d) throw InvalidArgument("weight vectors differ in length");
    for (int i = 0; i < d; ++i) m[j][i] = g.weights[j][i];
    m[j][d + j] = -g.orders[j];
  }
  IntMatrix gens;
  for (const auto& v : integerKernel(m, d + k)) {
    IntVector w(d);
    for (int i = 0; i < d; ++i) w[i] = v[i].get_si();
    gens.push_back(std::move(w));
  }
  return Semigroup(d, latticeBasisFromGenerators(gens, d));
}

bool isInvariantMonomial(const DiagonalGroup& g, const Exponent& v) {
  for (std::size_t j = 0; j < g.weights.size(); ++j) {
    long s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += g.weights[j][i] * v[i];
    if (((s % g.orders[j]) + g.orders[j]) % g.orders[j] != 0) return false;
  }
  return true;
}

HyperplaneCheck fixesHyperplaneCheck(const DiagonalGroup& g) {
  const int d = g.dimension(), k = static_cast<int>(g.orders.size());
  HyperplaneCheck res;
  IntVector e(k, 0);
  while (true) {
    int nonzero = 0;
    for (int i = 0; i < d; ++i) {
      // Phase of coordinate i is sum_j e_j w_ij / n_j mod 1.
      Rational phase = 0;
      for (int j = 0; j < k; ++j) phase += makeRational(e[j] * g.weights[j][i], g.orders[j]);
      phase -= Rational(floorOf(phase));
      if (phase != 0) ++nonzero;
    }
    if (nonzero == 1) {
      res.passes = false;
      res.offendingPowers = e;
      return res;
    }
    int j = k - 1;
    while (j >= 0 && e[j] == g.orders[j] - 1) e[j--] = 0;
    if (j < 0) break;
    ++e[j];
  }
  return res;
}

}  // namespace bsfe
