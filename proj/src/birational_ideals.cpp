#include "bsfe/birational_ideals.hpp"

#include <algorithm>
#include <set>

#include "bsfe/error.hpp"
#include "bsfe/linear_solve.hpp"
#include "bsfe/positive_char.hpp"

namespace bsfe {

namespace {

void requireProper(const MonomialIdeal& ideal) {
  if (ideal.isZero()) throw InvalidArgument("the zero ideal has no thresholds");
  if (ideal.isUnit()) throw InvalidArgument("the unit ideal has no finite thresholds");
}

std::string alphaText(const Rational& a) { return toString(a); }

// Minimal elements of {v in box : keep(v)} for an upward-closed predicate.
template <class Pred>
MonomialIdeal upwardClosedInBox(int d, const Exponent& box, Pred keep) {
  std::vector<Exponent> members;
  forEachInBox(box, [&](const Exponent& v) {
    for (const auto& m : members)
      if (dividesExponent(m, v)) return;
    if (keep(v)) members.push_back(v);
  });
  return MonomialIdeal(d, minimalElements(members));
}

}  // namespace

NewtonPolyhedron::NewtonPolyhedron(const MonomialIdeal& ideal) : ideal_(ideal) {
  requireProper(ideal);
  const int d = ideal.dimension();
  const auto& gens = ideal.generators();
  const int r = static_cast<int>(gens.size());
  const int dim = d + 1 + r;  // x, t, mu
  PolyhedronQ cone(dim);
  for (int g = 0; g < r; ++g) {
    RationalVector n(dim);
    n[d + 1 + g] = 1;
    cone.addInequality(n, 0);
  }
  for (int i = 0; i < d; ++i) {
    RationalVector n(dim);
    n[i] = 1;
    for (int g = 0; g < r; ++g) n[d + 1 + g] = -gens[g][i];
    cone.addInequality(n, 0);
  }
  RationalVector sum(dim);
  sum[d] = -1;
  for (int g = 0; g < r; ++g) sum[d + 1 + g] = 1;
  cone.addEquality(sum, 0);
  std::vector<Inequality> rows = cone.inequalities();
  for (int g = 0; g < r; ++g) rows = eliminateVariable(rows, d + 1 + g);
  for (const auto& row : rows) {
    if (row.normal[d] >= 0) continue;  // only upper bounds on t matter
    if (row.bound != 0) throw Error("internal: Newton cone row is not homogeneous");
    RationalVector w(row.normal.begin(), row.normal.begin() + d);
    for (const auto& a : w)
      if (a < 0) throw Error("internal: Newton cone row with a negative weight");
    facets_.emplace_back(w, -row.normal[d]);
  }
  std::sort(facets_.begin(), facets_.end());
  facets_.erase(std::unique(facets_.begin(), facets_.end()), facets_.end());
}

bool NewtonPolyhedron::contains(const RationalVector& x) const {
  for (const auto& [w, c] : facets_) {
    Rational s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
    if (s < c) return false;
  }
  return true;
}

Rational NewtonPolyhedron::threshold(const Exponent& v) const {
  if (static_cast<int>(v.size()) != dimension()) throw InvalidArgument("exponent has the wrong length");
  std::optional<Rational> best;
  for (const auto& [w, c] : facets_) {
    Rational s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (v[i] + 1);
    Rational val = s / c;
    if (!best || val < *best) best = val;
  }
  if (!best) throw Error("internal: Newton polyhedron without bounding rows");
  return *best;
}

Exponent NewtonPolyhedron::scanBox(const Rational& level, bool strict) const {
  Exponent box(dimension(), 0);
  for (const auto& [w, c] : facets_)
    for (int i = 0; i < dimension(); ++i) {
      if (w[i] <= 0) continue;
      Rational x = level * c / w[i];
      Integer b = strict ? floorOf(x) : Integer(ceilOf(x) - 1);
      if (b > box[i]) box[i] = static_cast<int>(b.get_si());
    }
  return box;
}

Rational jumpValue(const MonomialIdeal& ideal, const Exponent& v) {
  requireProper(ideal);
  if (static_cast<int>(v.size()) != ideal.dimension()) throw InvalidArgument("exponent has the wrong length");
  for (int a : v)
    if (a < 0) throw InvalidArgument("exponent must be non-negative");
  const auto& gens = ideal.generators();
  const int r = static_cast<int>(gens.size());
  PolyhedronQ p(r);
  p.addNonnegativity();
  for (int i = 0; i < ideal.dimension(); ++i) {
    RationalVector n(r);
    for (int g = 0; g < r; ++g) n[g] = gens[g][i];
    p.addUpperBound(n, v[i] + 1);
  }
  auto opt = maximizeLinear(p, RationalVector(r, 1));
  if (opt.status != LinearOptimum::Status::Optimal) throw Error("internal: threshold program is not bounded");
  return opt.value;
}

MonomialIdeal multiplierMonomial(const MonomialIdeal& ideal, const Rational& lambda) {
  if (lambda < 0) throw InvalidArgument("lambda must be non-negative");
  const int d = ideal.dimension();
  if (ideal.isZero()) return lambda == 0 ? MonomialIdeal::unit(d) : MonomialIdeal::zero(d);
  if (ideal.isUnit()) return MonomialIdeal::unit(d);
  NewtonPolyhedron np(ideal);
  return upwardClosedInBox(d, np.scanBox(lambda, true), [&](const Exponent& v) { return np.threshold(v) > lambda; });
}

Rational lct(const MonomialIdeal& ideal) { return jumpValue(ideal, Exponent(ideal.dimension(), 0)); }

std::vector<Rational> jumpingNumbers(const MonomialIdeal& ideal, const Rational& bound) {
  if (bound < 0) throw InvalidArgument("bound must be non-negative");
  NewtonPolyhedron np(ideal);
  // Past ceil(bound c / w_i) in coordinate i every row using x_i exceeds the
  // bound, so clamping there keeps all values <= bound.
  Exponent box = np.scanBox(bound, false);
  for (auto& b : box) b += 1;
  std::set<Rational> values;
  forEachInBox(box, [&](const Exponent& v) {
    Rational t = np.threshold(v);
    if (t > 0 && t <= bound) values.insert(t);
  });
  return {values.begin(), values.end()};
}

MonomialIdeal vfilOnRing(const MonomialIdeal& ideal, const Rational& alpha) {
  const int d = ideal.dimension();
  if (alpha <= 0 || ideal.isUnit()) return MonomialIdeal::unit(d);
  if (ideal.isZero()) return MonomialIdeal::zero(d);
  NewtonPolyhedron np(ideal);
  return upwardClosedInBox(d, np.scanBox(alpha, false), [&](const Exponent& v) { return np.threshold(v) >= alpha; });
}

MonomialIdeal vfilSummand(const Semigroup& s, const MonomialIdeal& ideal, const Rational& alpha) {
  for (const auto& g : ideal.generators())
    if (!s.contains(g)) throw HypothesisViolated("ideal generator " + formatVector(g) + " is not in the semigroup");
  return contractToSubring(s, vfilOnRing(ideal, alpha));
}

bool VAxiomReport::allPassed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& VAxiomReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InvalidArgument("no check named " + name);
}

VAxiomReport checkVAxioms(const std::vector<std::pair<Rational, MonomialIdeal>>& sample, const MonomialIdeal& ideal) {
  for (std::size_t k = 1; k < sample.size(); ++k)
    if (!(sample[k - 1].first < sample[k].first)) throw InvalidArgument("sample must be indexed by increasing alpha");
  const int d = ideal.dimension();
  auto vars = defaultVariableNames(d);
  NewtonPolyhedron np(ideal);
  VAxiomReport rep;

  AxiomCheck dec{"decreasing", true, ""};
  for (std::size_t k = 1; k < sample.size() && dec.passed; ++k)
    if (!sample[k - 1].second.containsIdeal(sample[k].second)) {
      dec.passed = false;
      dec.witness = "V^" + alphaText(sample[k].first) + " is not inside V^" + alphaText(sample[k - 1].first);
    }
  rep.checks.push_back(dec);

  AxiomCheck disc{"discreteness", true, ""};
  for (std::size_t k = 0; k < sample.size() && disc.passed; ++k) {
    const auto& [alpha, v] = sample[k];
    for (const auto& g : v.generators())
      if (np.threshold(g) < alpha) {
        disc.passed = false;
        disc.witness = "generator " + MultiPoly::monomial(vars, g).toString() + " of V^" + alphaText(alpha) +
                       " has threshold " + alphaText(np.threshold(g));
        break;
      }
    if (!disc.passed || k + 1 == sample.size() || v == sample[k + 1].second) continue;
    const auto& [next, w] = sample[k + 1];
    bool located = false;
    for (const auto& g : v.generators()) {
      Rational t = np.threshold(g);
      if (!w.contains(g) && t >= alpha && t < next) located = true;
    }
    if (!located) {
      disc.passed = false;
      disc.witness = "change between " + alphaText(alpha) + " and " + alphaText(next) + " has no threshold inside";
    }
  }
  rep.checks.push_back(disc);

  AxiomCheck comp{"compatibility", true, ""};
  AxiomCheck stab{"stability", true, ""};
  int pairs = 0;
  for (const auto& [alpha, v] : sample) {
    auto it = std::find_if(sample.begin(), sample.end(), [&](const auto& e) { return e.first == alpha + 1; });
    if (it == sample.end()) continue;
    ++pairs;
    MonomialIdeal prod = ideal * v;
    if (comp.passed && !it->second.containsIdeal(prod)) {
      comp.passed = false;
      comp.witness = "I V^" + alphaText(alpha) + " is not inside V^" + alphaText(it->first);
    }
    if (stab.passed && alpha >= d && prod != it->second) {
      stab.passed = false;
      stab.witness = "I V^" + alphaText(alpha) + " differs from V^" + alphaText(it->first);
    }
  }
  if (pairs == 0) comp.witness = stab.witness = "no pair alpha, alpha+1 in the sample";
  rep.checks.push_back(comp);
  rep.checks.push_back(stab);
  return rep;
}

MonomialIdeal hodgeIdealZero(const Exponent& f, const Rational& lambda) {
  bool nonzero = false;
  for (int a : f) {
    if (a != 0 && a != 1) throw HypothesisViolated("f must be a reduced monomial");
    nonzero = nonzero || a == 1;
  }
  if (!nonzero) throw HypothesisViolated("f must not be a unit");
  if (lambda < 0) throw InvalidArgument("lambda must be non-negative");
  return vfilOnRing(MonomialIdeal(static_cast<int>(f.size()), {f}), lambda);
}

SummandComparison summandComparisonReport(const Semigroup& s, const MonomialIdeal& ideal, const Rational& lambda) {
  const int d = s.dimension();
  if (ideal.dimension() != d) throw InvalidArgument("ideal dimension differs from the semigroup");
  for (const auto& g : ideal.generators())
    if (!s.contains(g)) throw HypothesisViolated("ideal generator " + formatVector(g) + " is not in the semigroup");
  SummandComparison rep;
  rep.intersection = contractToSubring(s, multiplierMonomial(ideal, lambda));
  rep.extensible = s.projectionsSurjective();
  if (!s.hasSubspace() && !s.hasGaps() && s.index() <= 64) {
    rep.hilbertBasis = s.hilbertBasis();
  }
  if (static_cast<int>(rep.hilbertBasis.size()) == d) {
    RationalMatrix h(d, RationalVector(d));
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) h[i][j] = rep.hilbertBasis[j][i];
    std::vector<Exponent> coords;
    for (const auto& g : ideal.generators()) {
      auto sol = solveLinearExact(h, RationalVector(g.begin(), g.end()));
      if (!sol) throw Error("internal: generator outside the span of the Hilbert basis");
      Exponent c(d);
      for (int j = 0; j < d; ++j) {
        const Rational& x = sol->particular[j];
        if (!isInteger(x) || x < 0) throw Error("internal: non-integral Hilbert basis coordinates");
        c[j] = static_cast<int>(x.get_num().get_si());
      }
      coords.push_back(c);
    }
    MonomialIdeal inA = multiplierMonomial(MonomialIdeal(d, coords), lambda);
    std::vector<Exponent> back;
    for (const auto& c : inA.generators()) {
      Exponent z(d, 0);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) z[i] += c[j] * rep.hilbertBasis[j][i];
      back.push_back(z);
    }
    rep.intrinsic = contractToSubring(s, MonomialIdeal(d, back));
    rep.match = *rep.intrinsic == rep.intersection;
    if (rep.extensible && !*rep.match)
      throw Error("multiplier ideal routes disagree although every coordinate projection of the lattice is onto");
  }
  if (!rep.intrinsic)
    rep.note = "intrinsic route skipped: the semigroup ring is not a polynomial ring in its Hilbert basis";
  else if (!rep.extensible)
    rep.note = "lattice projections are not onto, so the summand is not differentially extensible; the routes may "
               "differ, and whether they can differ for Cartier extensible summands in every characteristic is open";
  return rep;
}

}  // namespace bsfe
