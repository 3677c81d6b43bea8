#include "bsfe/polyhedron.hpp"

#include <algorithm>
#include <map>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

// Scales a row to a primitive integer normal (positive factor, so the sense is
// kept); rows with zero normal are left alone.
Inequality normalize(Inequality row) {
  Integer l = 1;
  for (const auto& v : row.normal) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  Integer g = 0;
  for (const auto& v : row.normal) {
    Integer n = v.get_num() * (l / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return row;
  Rational factor(l, g);
  factor.canonicalize();
  for (auto& v : row.normal) v *= factor;
  row.bound *= factor;
  return row;
}

// Keeps, for every normal direction, only the tightest bound.
std::vector<Inequality> dedupe(std::vector<Inequality> rows) {
  std::map<std::vector<std::string>, std::size_t> seen;
  std::vector<Inequality> out;
  for (auto& r0 : rows) {
    Inequality r = normalize(std::move(r0));
    std::vector<std::string> key;
    for (const auto& v : r.normal) key.push_back(v.get_str());
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), out.size());
      out.push_back(std::move(r));
      continue;
    }
    Inequality& cur = out[it->second];
    if (r.bound > cur.bound || (r.bound == cur.bound && r.strict)) cur = std::move(r);
  }
  return out;
}

bool isTrivial(const Inequality& r) {
  return std::all_of(r.normal.begin(), r.normal.end(), [](const Rational& v) { return v == 0; });
}

bool trivialHolds(const Inequality& r) { return r.strict ? (0 > r.bound) : (0 >= r.bound); }

}  // namespace

void PolyhedronQ::addInequality(RationalVector normal, Rational bound, bool strict) {
  if (static_cast<int>(normal.size()) != dim_) throw InvalidArgument("inequality has wrong dimension");
  rows_.push_back({std::move(normal), std::move(bound), strict});
}

void PolyhedronQ::addUpperBound(RationalVector normal, Rational bound, bool strict) {
  for (auto& v : normal) v = -v;
  addInequality(std::move(normal), -bound, strict);
}

void PolyhedronQ::addEquality(const RationalVector& normal, const Rational& value) {
  addInequality(normal, value, false);
  addUpperBound(normal, value, false);
}

void PolyhedronQ::addNonnegativity() {
  for (int i = 0; i < dim_; ++i) {
    RationalVector e(dim_, Rational(0));
    e[i] = 1;
    addInequality(std::move(e), 0, false);
  }
}

bool PolyhedronQ::contains(const RationalVector& x) const {
  if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("point has wrong dimension");
  for (const auto& r : rows_) {
    Rational lhs = 0;
    for (int i = 0; i < dim_; ++i) lhs += r.normal[i] * x[i];
    if (r.strict ? !(lhs > r.bound) : !(lhs >= r.bound)) return false;
  }
  return true;
}

std::vector<Inequality> eliminateVariable(const std::vector<Inequality>& rows, int var) {
  std::vector<Inequality> pos, neg, out;
  for (const auto& r : rows) {
    if (r.normal[var] > 0)
      pos.push_back(r);
    else if (r.normal[var] < 0)
      neg.push_back(r);
    else
      out.push_back(r);
  }
  for (const auto& p : pos) {
    for (const auto& n : neg) {
      Rational a = p.normal[var], b = -n.normal[var];
      Inequality c;
      c.normal.resize(p.normal.size());
      for (std::size_t i = 0; i < c.normal.size(); ++i) c.normal[i] = b * p.normal[i] + a * n.normal[i];
      c.normal[var] = 0;
      c.bound = b * p.bound + a * n.bound;
      c.strict = p.strict || n.strict;
      out.push_back(std::move(c));
    }
  }
  return dedupe(std::move(out));
}

bool polyhedronFeasible(const PolyhedronQ& p) {
  std::vector<Inequality> rows = dedupe(p.inequalities());
  for (int v = 0; v < p.dimension(); ++v) rows = eliminateVariable(rows, v);
  return std::all_of(rows.begin(), rows.end(), [](const Inequality& r) { return !isTrivial(r) || trivialHolds(r); });
}

LinearOptimum maximizeLinear(const PolyhedronQ& p, const RationalVector& objective) {
  const int d = p.dimension();
  if (static_cast<int>(objective.size()) != d) throw InvalidArgument("objective has wrong dimension");
  // Extra coordinate z = <objective, x>; eliminate x and read off bounds on z.
  std::vector<Inequality> rows;
  for (const auto& r : p.inequalities()) {
    Inequality e = r;
    e.normal.push_back(0);
    rows.push_back(std::move(e));
  }
  RationalVector eq(objective);
  eq.push_back(-1);
  rows.push_back({eq, 0, false});
  for (auto& v : eq) v = -v;
  rows.push_back({eq, 0, false});
  rows = dedupe(std::move(rows));
  for (int v = 0; v < d; ++v) rows = eliminateVariable(rows, v);

  LinearOptimum res;
  bool haveUpper = false, haveLower = false;
  Rational upper, lower;
  bool upperStrict = false, lowerStrict = false;
  for (const auto& r : rows) {
    const Rational& a = r.normal[d];
    if (a == 0) {
      if (!trivialHolds(r)) return res;  // infeasible
      continue;
    }
    Rational b = r.bound / a;
    if (a > 0) {
      if (!haveLower || b > lower || (b == lower && r.strict)) {
        lower = b;
        lowerStrict = r.strict;
        haveLower = true;
      }
    } else {
      if (!haveUpper || b < upper || (b == upper && r.strict)) {
        upper = b;
        upperStrict = r.strict;
        haveUpper = true;
      }
    }
  }
  if (haveLower && haveUpper) {
    if (lower > upper || (lower == upper && (lowerStrict || upperStrict))) return res;
  }
  if (!haveUpper) {
    res.status = LinearOptimum::Status::Unbounded;
    return res;
  }
  res.status = LinearOptimum::Status::Optimal;
  res.value = upper;
  res.attained = !upperStrict;
  return res;
}

}  // namespace bsfe
