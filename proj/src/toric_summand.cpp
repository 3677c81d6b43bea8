#include "bsfe/toric_summand.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "bsfe/error.hpp"
#include "bsfe/grid.hpp"

namespace bsfe {

namespace {

Exponent head(const Exponent& e, int d) { return Exponent(e.begin(), e.begin() + d); }

void requireAmbient(const Semigroup& s, const std::vector<std::string>& vars, const char* what) {
  if (static_cast<int>(vars.size()) < s.dimension())
    throw InvalidArgument(std::string(what) + ": expected at least " + std::to_string(s.dimension()) +
                          " ambient variables");
}

bool nonnegative(const Exponent& v) {
  return std::all_of(v.begin(), v.end(), [](int a) { return a >= 0; });
}

// Visits exponents of total degree deg in descending lex order; stops when
// visit returns true.
bool forEachOfDegree(int d, int deg, const std::function<bool(const Exponent&)>& visit) {
  Exponent v(d, 0);
  std::function<bool(int, int)> rec = [&](int i, int left) -> bool {
    if (i == d - 1) {
      v[i] = left;
      return visit(v);
    }
    for (int a = left; a >= 0; --a) {
      v[i] = a;
      if (rec(i + 1, left - a)) return true;
    }
    return false;
  };
  if (d == 0) return deg == 0 && visit(v);
  return rec(0, deg);
}

struct Piece {
  Exponent shift;
  MultiPoly coefficient;
  std::vector<std::string> theta;
};

MultiPoly pieceAt(const Piece& p, const Exponent& v) {
  std::map<std::string, Rational> at;
  for (std::size_t i = 0; i < v.size(); ++i) at[p.theta[i]] = v[i];
  return p.coefficient.evaluate(at);
}

bool badAt(const Semigroup& s, const Piece& p, const Exponent& v) {
  Exponent w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] + p.shift[i];
  if (nonnegative(w) && s.contains(w)) return false;
  return !pieceAt(p, v).isZero();
}

}  // namespace

bool inSubring(const Semigroup& s, const MultiPoly& p) {
  requireAmbient(s, p.variables(), "inSubring");
  for (const auto& [e, c] : p.terms())
    if (!s.contains(head(e, s.dimension()))) return false;
  return true;
}

SummandElement::SummandElement(const Semigroup& s, MultiPoly p) : p_(std::move(p)) {
  if (!inSubring(s, p_)) throw HypothesisViolated("polynomial " + p_.toString() + " is not in the subring");
}

MultiPoly splitBeta(const Semigroup& s, const MultiPoly& p) {
  requireAmbient(s, p.variables(), "splitBeta");
  MultiPoly r(p.variables());
  for (const auto& [e, c] : p.terms())
    if (s.contains(head(e, s.dimension()))) r.addTerm(e, c);
  return r;
}

LaurentLoc splitBeta(const Semigroup& s, const LaurentLoc& v) {
  if (!inSubring(s, v.context()->product()))
    throw HypothesisViolated("denominator " + v.context()->product().toString() + " is not in the subring");
  return LaurentLoc(v.context(), splitBeta(s, v.numerator()), v.denomExponent());
}

FsElement thetaSplit(const Semigroup& s, const FsElement& v) {
  for (const auto& fi : v.context()->f())
    if (!inSubring(s, fi)) throw HypothesisViolated("f entry " + fi.toString() + " is not in the subring");
  return FsElement(v.context(), splitBeta(s, v.coeff()));
}

RestrictedOperator::RestrictedOperator(Semigroup s, WeylOp delta) : s_(std::move(s)), delta_(std::move(delta)) {
  if (static_cast<int>(delta_.xVariables().size()) != s_.dimension())
    throw InvalidArgument("operator has " + std::to_string(delta_.xVariables().size()) +
                          " variables, semigroup dimension is " + std::to_string(s_.dimension()));
}

MultiPoly RestrictedOperator::apply(const MultiPoly& a) const { return splitBeta(s_, applyWeyl(delta_, a)); }

LaurentLoc RestrictedOperator::apply(const LaurentLoc& a) const {
  return splitBeta(s_, applyLocalized(delta_, a));
}

RestrictedOperator restrictOperator(const Semigroup& s, const WeylOp& delta) { return RestrictedOperator(s, delta); }

SubringPreservation checkPreservesSubring(const Semigroup& s, const WeylOp& delta, int degreeBound) {
  const int d = s.dimension();
  if (static_cast<int>(delta.xVariables().size()) != d)
    throw InvalidArgument("operator dimension does not match the semigroup");
  std::vector<Piece> pieces;
  int maxShift = 0;
  for (auto& g : gradedPieces(delta)) {
    Exponent mu(g.shift.begin(), g.shift.end());
    int size = 0;
    for (int a : mu) size += std::abs(a);
    maxShift = std::max(maxShift, size);
    pieces.push_back({mu, g.coefficient, thetaVariables(delta.xVariables())});
  }
  if (degreeBound < maxShift)
    throw InvalidArgument("degree bound " + std::to_string(degreeBound) + " is below the largest shift " +
                          std::to_string(maxShift));

  SubringPreservation out;
  out.degreeBound = degreeBound;

  // Exact analysis for S = N^d ∩ L: a piece with shift mu ∉ L must vanish on
  // all of S, hence identically. For mu ∈ L the bad monomials are the slices
  // v_i = a with 0 <= a < -mu_i; a nonempty slice is Zariski dense in its
  // hyperplane, so the piece must vanish there identically.
  bool exactPreserved = true;
  int searchDegree = degreeBound;
  const bool exactAvailable = !s.hasSubspace() && !s.hasGaps();
  if (exactAvailable) {
    const long n = s.index().get_si();
    for (const auto& p : pieces) {
      IntVector mu(p.shift.begin(), p.shift.end());
      int cdeg = p.coefficient.totalDegree();
      if (!s.inLattice(mu)) {
        exactPreserved = false;
        out.notes.push_back("shift " + formatVector(p.shift) + " leaves the lattice");
        searchDegree = std::max<long>(searchDegree, d * n * (cdeg + 2));
        continue;
      }
      for (int i = 0; i < d; ++i) {
        for (int a = 0; a < -p.shift[i]; ++a) {
          if (a % s.projectionGenerator(i) != 0) continue;
          MultiPoly slice = p.coefficient.evaluate({{p.theta[i], Rational(a)}});
          if (slice.isZero()) continue;
          exactPreserved = false;
          out.notes.push_back("shift " + formatVector(p.shift) + " on slice " + p.theta[i] + " = " +
                              std::to_string(a));
          searchDegree = std::max<long>(searchDegree, a + (d - 1) * n * (cdeg + 3));
        }
      }
    }
  }

  // Enumeration by total degree; finds the first counterexample.
  std::optional<Exponent> found;
  int limit = exactAvailable && !exactPreserved ? searchDegree : degreeBound;
  for (int deg = 0; deg <= limit && !found; ++deg) {
    forEachOfDegree(d, deg, [&](const Exponent& v) {
      if (!s.contains(v)) return false;
      for (const auto& p : pieces)
        if (badAt(s, p, v)) {
          found = v;
          return true;
        }
      return false;
    });
  }
  if (exactAvailable) {
    out.exact = true;
    if (exactPreserved && found)
      throw Error("internal: exact preservation contradicted at " + formatVector(*found));
    if (!exactPreserved && !found) throw Error("internal: counterexample search exhausted");
  }
  if (found) {
    out.preserved = false;
    out.counterexample = found;
    out.image = applyWeyl(delta, MultiPoly::monomial(delta.xVariables(), *found));
  }
  return out;
}

SummandIdentityResult checkDifferentialSummandIdentity(const Semigroup& s, const WeylOp& delta,
                                                       const std::vector<FsElement>& samples) {
  SummandIdentityResult out;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const FsElement& v = samples[k];
    const auto& ctx = v.context();
    if (static_cast<int>(ctx->xVariables().size()) != s.dimension())
      throw InvalidArgument("sample dimension does not match the semigroup");
    if (!inSubring(s, v.coeff().numerator()))
      throw HypothesisViolated("sample coefficient is not in the subring");
    FsElement lhs = thetaSplit(s, fsApply(delta, v));
    WeylOp lifted = delta.withSVariables(ctx->sVariables());
    int m = 0;
    for (int e : v.sDegrees()) m = std::max(m, e);
    m += lifted.order() + lifted.sDegree();
    out.gridBound = std::max(out.gridBound, m);
    for (const auto& t : gridPoints(static_cast<int>(ctx->length()), m)) {
      RestrictedOperator r(s, lifted.specializeS(t));
      if (specialize(lhs, t) != r.apply(specialize(v, t))) {
        out.holds = false;
        out.failingSample = k;
        out.failingPoint = t;
        return out;
      }
    }
  }
  return out;
}

namespace {

std::vector<long> longList(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be a list");
  std::vector<long> r;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InvalidArgument(std::string(what) + " entries must be integers");
    r.push_back(x.get<long>());
  }
  return r;
}

Rational rationalOf(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parseRational(j.get<std::string>());
  throw InvalidArgument("expected an integer or a rational string");
}

}  // namespace

Semigroup semigroupFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("semigroup must be an object");
  for (const auto& [key, value] : j.items())
    if (key != "dimension" && key != "lattice" && key != "equations" && key != "gaps" && key != "group")
      throw InvalidArgument("unknown semigroup field '" + key + "'");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw InvalidArgument("semigroup needs an integer 'dimension'");
  int d = j["dimension"].get<int>();
  if (d < 1) throw InvalidArgument("dimension must be positive");
  if (j.contains("lattice") && j.contains("group"))
    throw InvalidArgument("give either 'lattice' or 'group', not both");

  IntMatrix basis;
  if (j.contains("group")) {
    const auto& g = j["group"];
    if (!g.is_object() || !g.contains("weights") || !g.contains("orders"))
      throw InvalidArgument("group needs 'weights' and 'orders'");
    DiagonalGroup grp;
    for (const auto& w : g["weights"]) grp.weights.push_back(longList(w, "group weight"));
    grp.orders = longList(g["orders"], "group orders");
    if (grp.weights.size() != grp.orders.size()) throw InvalidArgument("one order per weight vector");
    for (const auto& w : grp.weights)
      if (static_cast<int>(w.size()) != d) throw InvalidArgument("weight vector length differs from dimension");
    for (long o : grp.orders)
      if (o < 1) throw InvalidArgument("group orders must be positive");
    basis = diagonalGroupToLattice(grp).latticeBasis();
  } else if (j.contains("lattice")) {
    for (const auto& row : j["lattice"]) basis.push_back(longList(row, "lattice row"));
    if (static_cast<int>(basis.size()) != d) throw InvalidArgument("lattice needs d rows");
    for (const auto& row : basis)
      if (static_cast<int>(row.size()) != d) throw InvalidArgument("lattice rows must have length d");
  } else {
    basis = Semigroup::full(d).latticeBasis();
  }
  std::vector<RationalVector> eqs;
  if (j.contains("equations"))
    for (const auto& row : j["equations"]) {
      RationalVector r;
      for (const auto& x : row) r.push_back(rationalOf(x));
      if (static_cast<int>(r.size()) != d) throw InvalidArgument("equation length differs from dimension");
      eqs.push_back(r);
    }
  std::vector<Exponent> gaps;
  if (j.contains("gaps"))
    for (const auto& row : j["gaps"]) {
      auto g = longList(row, "gap");
      if (static_cast<int>(g.size()) != d) throw InvalidArgument("gap length differs from dimension");
      gaps.emplace_back(g.begin(), g.end());
    }
  return Semigroup(d, basis, eqs, gaps);
}

nlohmann::json semigroupToJson(const Semigroup& s) {
  nlohmann::json j;
  j["dimension"] = s.dimension();
  j["lattice"] = s.latticeBasis();
  if (s.hasSubspace()) {
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& r : s.subspaceEquations()) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& q : r) row.push_back(toString(q));
      eqs.push_back(row);
    }
    j["equations"] = eqs;
  }
  if (s.hasGaps()) j["gaps"] = s.gaps();
  return j;
}

Semigroup loadSemigroupFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open semigroup file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("semigroup file: ") + e.what(), 0, 0);
  }
  return semigroupFromJson(j);
}

}  // namespace bsfe
