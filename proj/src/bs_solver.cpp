#include "bsfe/bs_solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "bsfe/graded_operator.hpp"
#include "bsfe/linear_solve.hpp"
#include "bsfe/toric_summand.hpp"

namespace bsfe {

namespace {

void forEachExponent(int n, int maxTotal, const std::function<void(const Exponent&)>& visit) {
  Exponent e(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      visit(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = a;
      rec(i + 1, left - a);
    }
    e[i] = 0;
  };
  rec(0, maxTotal);
}

// Q-span of exponent differences within each of the given polynomials.
class GradingKernel {
 public:
  GradingKernel(int n, const std::vector<MultiPoly>& polys) : n_(n) {
    for (const auto& p : polys) {
      if (p.isZero()) continue;
      const Exponent& lead = p.leadingExponent();
      for (const auto& [e, c] : p.terms()) {
        if (e == lead) continue;
        RationalVector d(n);
        for (int i = 0; i < n; ++i) d[i] = e[i] - lead[i];
        gens_.push_back(d);
      }
    }
  }
  bool contains(const std::vector<long>& v) const {
    bool zero = std::all_of(v.begin(), v.end(), [](long a) { return a == 0; });
    if (zero) return true;
    if (gens_.empty()) return false;
    RationalMatrix a(n_, RationalVector(gens_.size()));
    for (std::size_t j = 0; j < gens_.size(); ++j)
      for (int i = 0; i < n_; ++i) a[i][j] = gens_[j][i];
    RationalVector b(v.begin(), v.end());
    return solveLinearExact(a, b).has_value();
  }

 private:
  int n_;
  std::vector<RationalVector> gens_;
};

struct Column {
  std::size_t shiftIndex;
  Exponent a, b, e;
};

}  // namespace

std::vector<std::vector<long>> AnsatzSpec::shifts(std::size_t l) const {
  if (!cVectors.empty()) return cVectors;
  std::vector<std::vector<long>> out;
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<long> c(l, 0);
    c[i] = 1;
    out.push_back(c);
  }
  return out;
}

void AnsatzSpec::validate(std::size_t l) const {
  if (maxOrder < 0 || maxSDegree < 0 || maxCoeffDegree < 0 || maxBDegree < 0)
    throw InvalidArgument("ansatz bounds must be non-negative");
  if (kind != FeqKind::BmsMulti && l != 1) throw InvalidArgument(toString(kind) + " search needs a single f");
  for (const auto& c : shifts(l)) {
    if (c.size() != l) throw InvalidArgument("shift " + formatVector(c) + " has the wrong length");
    long sum = 0;
    for (long a : c) sum += a;
    if (sum != 1) throw InvalidArgument("shift " + formatVector(c) + " must have entries summing to 1");
  }
}

BsResult searchFeq(const std::vector<std::string>& xVars, const std::vector<MultiPoly>& fIn, const MultiPoly& gIn,
                   const AnsatzSpec& ansatz) {
  const std::size_t l = fIn.size();
  if (l == 0) throw InvalidArgument("empty tuple");
  ansatz.validate(l);
  const int n = static_cast<int>(xVars.size());
  std::vector<MultiPoly> f;
  for (const auto& fi : fIn) {
    if (fi.isZero()) throw InvalidArgument("tuple entries must be nonzero");
    f.push_back(fi.embed(xVars));
  }
  MultiPoly g = gIn.isZero() && gIn.variables().empty() ? MultiPoly::constant(xVars, 1) : gIn.embed(xVars);
  if (g.isZero()) throw InvalidArgument("g must be nonzero");
  if (ansatz.subring) {
    if (ansatz.subring->dimension() != n) throw InvalidArgument("subring dimension differs from the ring");
    for (const auto& p : f)
      if (!inSubring(*ansatz.subring, p)) throw HypothesisViolated(p.toString() + " is not in the subring");
    if (!inSubring(*ansatz.subring, g)) throw HypothesisViolated("g is not in the subring");
  }
  auto ctx = makeFsContext(xVars, f);
  const auto& sVars = ctx->sVariables();
  const auto& vars = ctx->variables();
  const auto shifts = ansatz.shifts(l);

  // Candidate terms.
  std::vector<Exponent> aList, bList, eList;
  forEachExponent(n, ansatz.maxCoeffDegree, [&](const Exponent& a) { aList.push_back(a); });
  forEachExponent(n, ansatz.maxOrder, [&](const Exponent& b) { bList.push_back(b); });
  forEachExponent(static_cast<int>(l), ansatz.maxSDegree, [&](const Exponent& e) { eList.push_back(e); });
  std::vector<MultiPoly> gradingPolys = f;
  gradingPolys.push_back(g);
  GradingKernel kernel(n, gradingPolys);
  std::map<std::pair<Exponent, Exponent>, bool> preserves;
  std::vector<Column> columns;
  for (std::size_t ci = 0; ci < shifts.size(); ++ci) {
    std::vector<long> degC(n, 0);
    for (std::size_t i = 0; i < l; ++i)
      for (int r = 0; r < n; ++r) degC[r] += shifts[ci][i] * f[i].leadingExponent()[r];
    for (const auto& b : bList)
      for (const auto& a : aList) {
        if (ansatz.gradingFilter) {
          std::vector<long> deg(n);
          for (int r = 0; r < n; ++r) deg[r] = a[r] - b[r] + degC[r];
          if (!kernel.contains(deg)) continue;
        }
        if (ansatz.subring) {
          auto key = std::make_pair(a, b);
          auto it = preserves.find(key);
          if (it == preserves.end()) {
            WeylOp t = WeylOp::term(xVars, {}, a, b, {}, 1);
            int bound = 0;
            for (int r = 0; r < n; ++r) bound += a[r] + b[r];
            it = preserves.emplace(key, checkPreservesSubring(*ansatz.subring, t, bound).preserved).first;
          }
          if (!it->second) continue;
        }
        for (const auto& e : eList) columns.push_back({ci, a, b, e});
      }
  }
  const std::size_t unknowns = columns.size() + ansatz.maxBDegree;
  if (unknowns > ansatz.maxUnknowns)
    throw CapExceeded("ansatz needs " + std::to_string(unknowns) + " unknowns, cap is " +
                      std::to_string(ansatz.maxUnknowns));

  // d^b applied to each source element, sharing prefixes.
  std::vector<std::map<Exponent, FsElement>> images(shifts.size());
  std::function<const FsElement&(std::size_t, const Exponent&)> image = [&](std::size_t ci,
                                                                           const Exponent& b) -> const FsElement& {
    auto it = images[ci].find(b);
    if (it != images[ci].end()) return it->second;
    int r = 0;
    while (r < n && b[r] == 0) ++r;
    if (r == n) return images[ci].emplace(b, feqSource(ctx, shifts[ci], g)).first->second;
    Exponent prev = b;
    --prev[r];
    FsElement next = fsApply(WeylOp::partial(xVars, sVars, r), image(ci, prev));
    return images[ci].emplace(b, next).first->second;
  };
  int kCommon = 0;
  for (const auto& col : columns) kCommon = std::max(kCommon, image(col.shiftIndex, col.b).coeff().denomExponent());

  std::map<Exponent, SparseRow> opRows;
  std::map<std::pair<std::size_t, Exponent>, MultiPoly> numerators;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& col = columns[j];
    auto key = std::make_pair(col.shiftIndex, col.b);
    auto it = numerators.find(key);
    if (it == numerators.end())
      it = numerators.emplace(key, image(col.shiftIndex, col.b).coeff().numeratorAt(kCommon)).first;
    for (const auto& [e, c] : it->second.terms()) {
      Exponent row = e;
      for (int r = 0; r < n; ++r) row[r] += col.a[r];
      for (std::size_t i = 0; i < l; ++i) row[n + i] += col.e[i];
      opRows[row][static_cast<int>(j)] += c;
    }
  }
  for (auto& [row, entries] : opRows)
    for (auto it = entries.begin(); it != entries.end();)
      it = it->second == 0 ? entries.erase(it) : std::next(it);

  MultiPoly base = g.embed(vars) * ctx->loc()->productPower(kCommon).embed(vars);
  MultiPoly sSum(vars);
  for (const auto& s : sVars) sSum += MultiPoly::variable(vars, s);

  BsResult out;
  const std::vector<std::string> sOnly{"s"};
  MultiPoly sPow = base;  // S^k g F^K
  std::vector<MultiPoly> targets;
  for (int k = 0; k <= ansatz.maxBDegree; ++k) {
    targets.push_back(sPow);
    // Rows: operator rows plus b columns (-S^j g F^K for j < k), rhs S^k g F^K.
    const int bCol0 = static_cast<int>(columns.size());
    std::map<Exponent, SparseRow> rows = opRows;
    std::map<Exponent, Rational> rhs;
    for (int j = 0; j < k; ++j)
      for (const auto& [e, c] : targets[j].terms()) rows[e][bCol0 + j] -= c;
    for (const auto& [e, c] : sPow.terms()) {
      rows[e];
      rhs[e] = c;
    }
    SparseSystem sys;
    sys.numColumns = bCol0 + k;
    for (auto& [e, row] : rows) {
      auto it = rhs.find(e);
      sys.addRow(row, it == rhs.end() ? Rational(0) : it->second);
    }
    out.equations = std::max(out.equations, sys.rows.size());
    auto sol = solveSparse(sys);
    if (!sol) {
      out.infeasibleDegrees.push_back(k);
      sPow = sPow * sSum;
      continue;
    }
    std::vector<Rational> bc(k + 1);
    for (int j = 0; j < k; ++j) bc[j] = sol->particular[bCol0 + j];
    bc[k] = 1;
    out.b = fromUnivariate(sOnly, 0, bc);
    FeqSpec spec;
    spec.kind = ansatz.kind;
    if (spec.kind == FeqKind::Principal && g != MultiPoly::constant(xVars, 1)) spec.kind = FeqKind::Relative;
    spec.g = g;
    spec.b = out.b;
    for (std::size_t ci = 0; ci < shifts.size(); ++ci) spec.terms.push_back(FeqTerm{shifts[ci], WeylOp(xVars, sVars)});
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const Rational& u = sol->particular[j];
      if (u == 0) continue;
      const auto& col = columns[j];
      spec.terms[col.shiftIndex].op += WeylOp::term(xVars, sVars, col.a, col.b, col.e, u);
    }
    std::vector<FeqTerm> kept;
    for (auto& t : spec.terms)
      if (!(t.op == WeylOp(xVars, sVars))) kept.push_back(t);
    if (kept.empty()) kept.push_back(spec.terms.front());
    spec.terms = kept;
    out.witness = spec;
    out.certificate = verifyFeqFormal(spec, ctx);
    if (!out.certificate.verified) throw Error("internal: solved operator fails verification");
    out.minimalWithinBounds = static_cast<int>(out.infeasibleDegrees.size()) == k;
    out.unknowns = columns.size() + k;
    return out;
  }
  throw NotFoundWithinBounds("no functional equation with deg b <= " + std::to_string(ansatz.maxBDegree) +
                                 " within the ansatz bounds (this does not show nonexistence)",
                             unknowns);
}

MustataLift mustataLift(const std::vector<std::string>& xVars, const std::vector<MultiPoly>& f, const MultiPoly& g) {
  if (f.empty()) throw InvalidArgument("empty tuple");
  MustataLift out;
  std::set<std::string> taken(xVars.begin(), xVars.end());
  std::string prefix = "y";
  auto clash = [&](const std::string& p) {
    for (std::size_t i = 1; i <= f.size(); ++i)
      if (taken.count(p + std::to_string(i))) return true;
    return false;
  };
  while (clash(prefix)) prefix += "_";
  out.variables = xVars;
  for (std::size_t i = 1; i <= f.size(); ++i) {
    out.newVariables.push_back(prefix + std::to_string(i));
    out.variables.push_back(out.newVariables.back());
  }
  out.h = MultiPoly(out.variables);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].isZero()) throw InvalidArgument("tuple entries must be nonzero");
    out.h += MultiPoly::variable(out.variables, out.newVariables[i]) * f[i].embed(out.variables);
  }
  out.g = g.isZero() && g.variables().empty() ? MultiPoly::constant(out.variables, 1) : g.embed(out.variables);
  return out;
}

MultiPoly divideBySPlusOne(const MultiPoly& b) {
  MultiPoly bs = b.embed({"s"});
  auto q = bs.divideExact(MultiPoly::variable({"s"}, "s") + MultiPoly::constant({"s"}, 1));
  if (!q) throw InvalidArgument("(s+1) does not divide " + bs.toString());
  return *q;
}

RootFactorization factorRationalRoots(const MultiPoly& b) {
  MultiPoly rest = b.embed({"s"});
  if (rest.isZero()) throw InvalidArgument("zero polynomial has no root factorization");
  RootFactorization out;
  for (const auto& r : rationalRoots(univariateCoefficients(rest))) {
    MultiPoly lin = MultiPoly::variable({"s"}, "s") - MultiPoly::constant({"s"}, r);
    int mult = 0;
    while (auto q = rest.divideExact(lin)) {
      rest = *q;
      ++mult;
    }
    out.roots.emplace_back(r, mult);
  }
  out.rest = rest;
  return out;
}

std::optional<Rational> minimalExponent(const MultiPoly& b) {
  auto fac = factorRationalRoots(divideBySPlusOne(b));
  if (fac.rest.totalDegree() > 0) throw HypothesisViolated("b has roots that are not rational");
  if (fac.roots.empty()) return std::nullopt;
  return -fac.roots.back().first;
}

}  // namespace bsfe
