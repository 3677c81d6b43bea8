#include "bsfe/job.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <functional>
#include <fstream>
#include <set>
#include <sstream>

#include "bsfe/birational_ideals.hpp"
#include "bsfe/bs_solver.hpp"
#include "bsfe/error.hpp"
#include "bsfe/fs_module.hpp"
#include "bsfe/graded_operator.hpp"
#include "bsfe/parse.hpp"
#include "bsfe/positive_char.hpp"
#include "bsfe/toric_summand.hpp"
#include "bsfe/weyl.hpp"

namespace bsfe {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const char* kVersion = "1.0.0";

// Thrown after the report body is filled, to carry a non-zero status.
struct Outcome {
  std::string status;
  int code;
};

void allowKeys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw InvalidArgument(where + " must be an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw InvalidArgument("unknown field '" + it.key() + "' in " + where);
}

const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw InvalidArgument("missing field '" + key + "' in " + where);
  return j.at(key);
}

std::string needString(const json& j, const std::string& key, const std::string& where) {
  const json& v = need(j, key, where);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw InvalidArgument("field '" + key + "' in " + where + " must be a string");
}

Rational rationalField(const json& j, const std::string& key, const std::string& where) {
  std::string text = needString(j, key, where);
  try {
    return parseRational(text);
  } catch (const Error& e) {
    throw InvalidArgument("field '" + key + "' in " + where + ": " + e.what());
  }
}

template <class T>
T optField(const json& j, const std::string& key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

MultiPoly poly(const std::string& text, const std::vector<std::string>& vars, const std::string& where) {
  try {
    return parsePolynomial(text, vars);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.line(), e.column());
  }
}

std::vector<MultiPoly> polyList(const json& j, const std::vector<std::string>& vars, const std::string& where) {
  if (!j.is_array() || j.empty()) throw InvalidArgument(where + " must be a non-empty array");
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(poly(j[i].get<std::string>(), vars, where + "[" + std::to_string(i) + "]"));
  return out;
}

MonomialIdeal idealField(const json& j, const std::vector<std::string>& vars, const std::string& where) {
  const int d = static_cast<int>(vars.size());
  if (!j.is_array()) throw InvalidArgument(where + " must be an array of monomials");
  std::vector<Exponent> gens;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = where + "[" + std::to_string(i) + "]";
    if (j[i].is_array()) {
      auto e = j[i].get<Exponent>();
      if (static_cast<int>(e.size()) != d) throw InvalidArgument(at + " has the wrong length");
      for (int a : e)
        if (a < 0) throw InvalidArgument(at + " has a negative entry");
      gens.push_back(e);
    } else {
      MultiPoly m = poly(j[i].get<std::string>(), vars, at);
      if (m.size() != 1) throw InvalidArgument(at + " is not a monomial");
      gens.push_back(m.terms().begin()->first);
    }
  }
  return MonomialIdeal(d, gens);
}

ojson idealJson(const MonomialIdeal& ideal, const std::vector<std::string>& vars) {
  ojson o;
  o["text"] = ideal.toString(vars);
  o["generators"] = ideal.generators();
  return o;
}

ojson rationals(const std::vector<Rational>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(toString(x));
  return a;
}

ojson factorJson(const MultiPoly& b) {
  ojson roots = ojson::array();
  auto fac = factorRationalRoots(b);
  for (const auto& [r, m] : fac.roots) roots.push_back({{"root", toString(r)}, {"multiplicity", m}});
  return roots;
}

// "(s+1)^2*(s+1/2)" style text; falls back to the expanded form.
std::string factoredText(const MultiPoly& b) {
  auto fac = factorRationalRoots(b);
  if (!fac.rest.isConstant()) return b.toString();
  std::string out;
  Rational lead = fac.rest.constantTerm();
  if (lead != 1) out = toString(lead);
  for (auto it = fac.roots.rbegin(); it != fac.roots.rend(); ++it) {
    const auto& [r, m] = *it;
    if (!out.empty()) out += "*";
    std::string factor = r == 0 ? "s" : (r < 0 ? "(s+" + toString(-r) + ")" : "(s-" + toString(r) + ")");
    out += factor;
    if (m > 1) out += "^" + std::to_string(m);
  }
  return out.empty() ? "1" : out;
}

struct Context {
  std::vector<std::string> vars;
  std::optional<MonomialIdeal> quotient;
  std::optional<Semigroup> semigroup;
  JobOptions options;
};

Semigroup& needSemigroup(Context& ctx, const std::string& task) {
  if (!ctx.semigroup) throw InvalidArgument("task " + task + " needs a semigroup");
  if (ctx.semigroup->dimension() != static_cast<int>(ctx.vars.size()))
    throw InvalidArgument("semigroup dimension differs from the number of ring variables");
  return *ctx.semigroup;
}

// ---- functional equations -------------------------------------------------

struct ParsedEquation {
  FsContextPtr fs;
  FeqSpec spec;
  std::vector<std::optional<GradedOperator>> graded;  // per term
};

ParsedEquation parseEquation(const json& p, const Context& ctx) {
  ParsedEquation eq;
  auto f = polyList(need(p, "f", "payload"), ctx.vars, "payload.f");
  std::vector<std::string> sVars;
  if (p.contains("sVariables")) sVars = p.at("sVariables").get<std::vector<std::string>>();
  eq.fs = makeFsContext(ctx.vars, f, sVars);
  const auto& sNames = eq.fs->sVariables();
  eq.spec.kind = parseFeqKind(p.contains("kind") ? p.at("kind").get<std::string>()
                                                 : (f.size() == 1 ? "principal" : "bmsMulti"));
  if (p.contains("g")) eq.spec.g = poly(needString(p, "g", "payload"), ctx.vars, "payload.g");
  eq.spec.b = poly(needString(p, "b", "payload"), {"s"}, "payload.b");
  const json& terms = need(p, "terms", "payload");
  if (!terms.is_array() || terms.empty()) throw InvalidArgument("payload.terms must be a non-empty array");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::string at = "payload.terms[" + std::to_string(k) + "]";
    const json& t = terms[k];
    allowKeys(t, at, {"c", "op", "graded"});
    FeqTerm term;
    term.c = need(t, "c", at).get<std::vector<long>>();
    if (t.contains("op") == t.contains("graded")) throw InvalidArgument(at + " needs exactly one of op, graded");
    if (t.contains("op")) {
      try {
        term.op = parseWeylOp(t.at("op").get<std::string>(), ctx.vars, sNames);
      } catch (const ParseError& e) {
        throw ParseError(at + ".op: " + e.what(), e.line(), e.column());
      }
      eq.graded.emplace_back();
    } else {
      const json& g = t.at("graded");
      allowKeys(g, at + ".graded", {"pieces", "order"});
      std::vector<std::tuple<std::vector<int>, std::string, std::string>> pieces;
      for (const auto& piece : need(g, "pieces", at + ".graded")) {
        allowKeys(piece, at + ".graded.pieces", {"shift", "numerator", "denominator"});
        pieces.emplace_back(need(piece, "shift", "piece").get<std::vector<int>>(),
                            needString(piece, "numerator", "piece"),
                            piece.contains("denominator") ? needString(piece, "denominator", "piece") : "1");
      }
      int order = optField<int>(g, "order", 0);
      eq.graded.emplace_back(GradedOperator::parse(ctx.vars, pieces, order));
      term.op = WeylOp(ctx.vars, sNames);
      term.orderHint = order;
      term.sDegreeHint = 0;
    }
    eq.spec.terms.push_back(term);
  }
  eq.spec.validate(f.size());
  return eq;
}

void taskVerifyFeq(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"f", "kind", "g", "b", "terms", "sVariables", "route", "gridBound"});
  auto eq = parseEquation(p, ctx);
  bool anyGraded = false;
  for (const auto& g : eq.graded) anyGraded = anyGraded || g.has_value();
  bool polynomialRing = !ctx.quotient && (!ctx.semigroup || ctx.semigroup->isFull()) && !anyGraded;
  std::string route = optField<std::string>(p, "route", polynomialRing ? "formal" : "specialized");
  if (route != "formal" && route != "specialized") throw InvalidArgument("payload.route must be formal or specialized");
  if (route == "formal" && !polynomialRing)
    throw InvalidArgument("the formal route needs the polynomial ring and Weyl algebra operators");
  if (anyGraded && !ctx.semigroup) throw InvalidArgument("graded operators need a semigroup");

  r["b"] = eq.spec.b.toString();
  r["bFactored"] = factoredText(eq.spec.b);
  r["kind"] = toString(eq.spec.kind);
  r["route"] = route;
  if (ctx.quotient) {
    bool all = true;
    ojson per = ojson::array();
    for (const auto& t : eq.spec.terms) {
      bool ok = preservesIdeal(t.op, *ctx.quotient).preserved;
      per.push_back(ok);
      all = all && ok;
    }
    r["operatorsPreserveQuotient"] = per;
    if (!all) throw HypothesisViolated("an operator does not preserve the quotient ideal");
  }

  auto specialized = [&]() {
    SpecializedOptions opt;
    opt.threads = ctx.options.threads;
    if (p.contains("gridBound")) opt.gridBound = p.at("gridBound").get<int>();
    if (ctx.quotient) {
      MonomialIdeal q = *ctx.quotient;
      opt.normalForm = [q](const MultiPoly& x) {
        MultiPoly out(x.variables());
        for (const auto& [e, c] : x.terms())
          if (!q.contains(e)) out.addTerm(e, c);
        return out;
      };
    }
    SpecializedAction poly = polynomialRingAction();
    // the checker may copy the spec, so terms are matched by value
    SpecializedAction act = [&, poly](const FeqTerm& term, const std::vector<long>& t, const MultiPoly& e) {
      for (std::size_t i = 0; i < eq.spec.terms.size(); ++i) {
        const auto& ti = eq.spec.terms[i];
        if (ti.c != term.c || !(ti.op == term.op)) continue;
        if (eq.graded[i]) return applyGraded(*eq.graded[i], e, *ctx.semigroup);
        break;
      }
      return poly(term, t, e);
    };
    return verifyFeqSpecialized(eq.spec, eq.fs, act, opt);
  };

  FeqVerification v;
  if (route == "formal") {
    v = verifyFeqFormal(eq.spec, eq.fs);
    if (!v.verified && v.discrepancy) r["discrepancy"] = v.discrepancy->toString();
    if (!v.verified) {
      // grid witness for the same equation, lex-smallest
      auto s = specialized();
      if (s.witness) r["witness"] = *s.witness;
    }
  } else {
    v = specialized();
    r["gridBound"] = v.gridBound;
    r["pointsChecked"] = v.pointsChecked;
    if (v.witness) r["witness"] = *v.witness;
  }
  r["verified"] = v.verified;
  if (!v.verified) throw Outcome{"refuted", kExitRefuted};
  return;
}

void taskBsSearch(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"f", "g", "kind", "cVectors", "maxOrder", "maxSDegree", "maxCoeffDegree", "maxBDegree",
                           "gradingFilter", "restrictToSemigroup"});
  auto f = polyList(need(p, "f", "payload"), ctx.vars, "payload.f");
  MultiPoly g;
  if (p.contains("g")) g = poly(needString(p, "g", "payload"), ctx.vars, "payload.g");
  AnsatzSpec a;
  a.kind = parseFeqKind(optField<std::string>(p, "kind", f.size() == 1 ? "principal" : "bmsMulti"));
  if (p.contains("cVectors")) a.cVectors = p.at("cVectors").get<std::vector<std::vector<long>>>();
  a.maxOrder = optField(p, "maxOrder", a.maxOrder);
  a.maxSDegree = optField(p, "maxSDegree", a.maxSDegree);
  a.maxCoeffDegree = optField(p, "maxCoeffDegree", a.maxCoeffDegree);
  a.maxBDegree = optField(p, "maxBDegree", a.maxBDegree);
  a.gradingFilter = optField(p, "gradingFilter", a.gradingFilter);
  if (ctx.options.maxUnknowns) a.maxUnknowns = *ctx.options.maxUnknowns;
  if (optField(p, "restrictToSemigroup", false)) a.subring = needSemigroup(ctx, "bs-search with restrictToSemigroup");

  r["ansatz"] = {{"maxOrder", a.maxOrder}, {"maxSDegree", a.maxSDegree}, {"maxCoeffDegree", a.maxCoeffDegree},
                 {"maxBDegree", a.maxBDegree}, {"maxUnknowns", a.maxUnknowns}};
  BsResult res;
  try {
    res = searchFeq(ctx.vars, f, g, a);
  } catch (const NotFoundWithinBounds& e) {
    r["found"] = false;
    r["unknowns"] = e.unknowns();
    r["reason"] = e.what();
    throw Outcome{"not-found", kExitNotFound};
  }
  r["found"] = true;
  r["b"] = res.b.toString();
  r["bFactored"] = factoredText(res.b);
  r["roots"] = factorJson(res.b);
  r["minimalWithinBounds"] = res.minimalWithinBounds;
  r["infeasibleDegrees"] = res.infeasibleDegrees;
  r["unknowns"] = res.unknowns;
  r["equations"] = res.equations;
  ojson terms = ojson::array();
  for (const auto& t : res.witness.terms) terms.push_back({{"c", t.c}, {"op", t.op.toString()}});
  r["witness"] = {{"kind", toString(res.witness.kind)}, {"terms", terms}};
  r["witnessVerified"] = res.certificate.verified;
  if (f.size() == 1) {
    try {
      auto me = minimalExponent(res.b);
      r["minimalExponent"] = me ? ojson(toString(*me)) : ojson(nullptr);
    } catch (const Error&) {
      r["minimalExponent"] = nullptr;
    }
  }
  return;
}

void taskMustata(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"f", "pairOrder", "liftOrder", "maxBDegree", "maxCoeffDegree"});
  auto f = polyList(need(p, "f", "payload"), ctx.vars, "payload.f");
  AnsatzSpec pa;
  pa.kind = f.size() == 1 ? FeqKind::Principal : FeqKind::BmsMulti;
  pa.maxOrder = optField(p, "pairOrder", 2);
  pa.maxBDegree = optField(p, "maxBDegree", pa.maxBDegree);
  pa.maxCoeffDegree = optField(p, "maxCoeffDegree", 0);
  AnsatzSpec la = pa;
  la.kind = FeqKind::Principal;
  la.maxOrder = optField(p, "liftOrder", 3);
  la.maxBDegree = pa.maxBDegree + 1;
  if (ctx.options.maxUnknowns) pa.maxUnknowns = la.maxUnknowns = *ctx.options.maxUnknowns;
  auto lift = mustataLift(ctx.vars, f);
  r["h"] = lift.h.toString();
  r["liftVariables"] = lift.variables;
  try {
    auto pair = searchFeq(ctx.vars, f, MultiPoly(), pa);
    r["pairB"] = factoredText(pair.b);
    auto lifted = searchFeq(lift.variables, {lift.h}, MultiPoly(), la);
    r["liftedB"] = factoredText(lifted.b);
    MultiPoly expected = parsePolynomial("s+1", {"s"}) * pair.b;
    r["consistent"] = lifted.b == expected;
    r["minimalWithinBounds"] = pair.minimalWithinBounds && lifted.minimalWithinBounds;
    if (lifted.b != expected) throw Outcome{"mismatch", kExitRefuted};
  } catch (const NotFoundWithinBounds& e) {
    r["skippedByCap"] = false;
    r["reason"] = e.what();
    throw Outcome{"not-found", kExitNotFound};
  } catch (const CapExceeded& e) {
    r["skippedByCap"] = true;
    r["cap"] = la.maxUnknowns;
    r["reason"] = e.what();
    throw Outcome{"skipped-by-cap", kExitNotFound};
  }
  return;
}

// ---- summands ---------------------------------------------------------------

void taskRestrictOp(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"op", "degreeBound", "apply"});
  Semigroup& s = needSemigroup(ctx, "restrict-op");
  WeylOp op = parseWeylOp(needString(p, "op", "payload"), ctx.vars);
  int bound = optField(p, "degreeBound", std::max(8, op.order() * 2));
  auto pres = checkPreservesSubring(s, op, bound);
  r["operator"] = op.toString();
  r["preserved"] = pres.preserved;
  r["exact"] = pres.exact;
  r["degreeBound"] = pres.degreeBound;
  if (pres.counterexample) {
    r["counterexample"] = *pres.counterexample;
    r["image"] = pres.image ? pres.image->toString() : "";
  }
  r["notes"] = pres.notes;
  if (p.contains("apply")) {
    auto rest = restrictOperator(s, op);
    ojson images = ojson::array();
    for (const auto& a : polyList(p.at("apply"), ctx.vars, "payload.apply"))
      images.push_back({{"input", a.toString()}, {"image", rest.apply(a).toString()}});
    r["restrictedImages"] = images;
  }
  if (!pres.preserved) throw Outcome{"refuted", kExitRefuted};
  return;
}

void taskCheckExtensible(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {});
  Semigroup& s = needSemigroup(ctx, "check-extensible");
  r["semigroup"] = s.describe();
  r["index"] = s.index().get_str();
  std::vector<long> m;
  for (int i = 0; i < s.dimension(); ++i) m.push_back(s.projectionGenerator(i));
  r["projectionGenerators"] = m;
  r["extensible"] = s.projectionsSurjective();
  if (!s.hasSubspace() && !s.hasGaps()) r["hilbertBasis"] = s.hilbertBasis();
  return;
}

// ---- ideals -----------------------------------------------------------------

ojson reportJson(const TestIdealReport& t, const std::vector<std::string>& vars) {
  ojson r;
  r["ideal"] = idealJson(t.ideal, vars);
  ojson levels = ojson::array();
  for (const auto& l : t.levels) levels.push_back(l.toString(vars));
  r["levels"] = levels;
  r["stabilizedAt"] = t.stabilizedAt ? ojson(*t.stabilizedAt) : ojson(nullptr);
  return r;
}

void taskTestIdeal(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"ideal", "lambda", "p", "eMax"});
  auto ideal = idealField(need(p, "ideal", "payload"), ctx.vars, "payload.ideal");
  Rational lambda = rationalField(p, "lambda", "payload");
  long prime = need(p, "p", "payload").get<long>();
  int eMax = optField(p, "eMax", 4);
  r["p"] = prime;
  r["lambda"] = toString(lambda);
  if (ctx.semigroup && !ctx.semigroup->isFull()) {
    Semigroup& s = needSemigroup(ctx, "test-ideal");
    auto rep = testIdealSummand(s, ideal, lambda, prime, eMax);
    r["intrinsic"] = idealJson(rep.intrinsic, ctx.vars);
    r["retraction"] = idealJson(rep.retraction, ctx.vars);
    r["agree"] = rep.agree;
    r["hypothesisHolds"] = rep.hypothesisHolds;
    bool stable = rep.intrinsicStabilizedAt && rep.retractionStabilizedAt;
    r["stabilized"] = stable;
    if (!stable) throw Outcome{"unstabilized", kExitNotFound};
    if (!rep.agree) throw Outcome{"mismatch", kExitRefuted};
    return;
  }
  auto rep = testIdealMonomial(ideal, lambda, prime, eMax);
  r.update(reportJson(rep, ctx.vars));
  if (!rep.stabilized()) throw Outcome{"unstabilized", kExitNotFound};
  return;
}

void taskMultiplier(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"ideal", "lambda"});
  auto ideal = idealField(need(p, "ideal", "payload"), ctx.vars, "payload.ideal");
  Rational lambda = rationalField(p, "lambda", "payload");
  r["lambda"] = toString(lambda);
  auto j = multiplierMonomial(ideal, lambda);
  r["multiplier"] = idealJson(j, ctx.vars);
  if (ctx.semigroup && !ctx.semigroup->isFull())
    r["intersection"] = idealJson(contractToSubring(needSemigroup(ctx, "multiplier"), j), ctx.vars);
  return;
}

void taskLct(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"ideal"});
  auto ideal = idealField(need(p, "ideal", "payload"), ctx.vars, "payload.ideal");
  r["lct"] = toString(lct(ideal));
  ojson facets = ojson::array();
  NewtonPolyhedron np(ideal);
  for (const auto& [w, c] : np.facets()) facets.push_back({{"normal", rationals(w)}, {"bound", toString(c)}});
  r["newtonRows"] = facets;
  return;
}

void taskJumpingNumbers(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"ideal", "bound"});
  auto ideal = idealField(need(p, "ideal", "payload"), ctx.vars, "payload.ideal");
  Rational bound = rationalField(p, "bound", "payload");
  r["bound"] = toString(bound);
  r["jumpingNumbers"] = rationals(jumpingNumbers(ideal, bound));
  return;
}

void taskVfil(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"ideal", "alpha", "alphas", "checkAxioms"});
  auto ideal = idealField(need(p, "ideal", "payload"), ctx.vars, "payload.ideal");
  std::vector<Rational> alphas;
  if (p.contains("alpha")) alphas.push_back(rationalField(p, "alpha", "payload"));
  if (p.contains("alphas"))
    for (const auto& a : p.at("alphas")) alphas.push_back(parseRational(a.is_string() ? a.get<std::string>() : a.dump()));
  if (alphas.empty()) throw InvalidArgument("payload needs alpha or alphas");
  bool summand = ctx.semigroup && !ctx.semigroup->isFull();
  ojson pieces = ojson::array();
  std::vector<std::pair<Rational, MonomialIdeal>> sample;
  for (const auto& a : alphas) {
    auto v = vfilOnRing(ideal, a);
    sample.emplace_back(a, v);
    ojson e{{"alpha", toString(a)}, {"ideal", idealJson(v, ctx.vars)}};
    if (summand) e["summand"] = idealJson(vfilSummand(*ctx.semigroup, ideal, a), ctx.vars);
    pieces.push_back(e);
  }
  r["filtration"] = pieces;
  if (optField(p, "checkAxioms", false)) {
    auto rep = checkVAxioms(sample, ideal);
    ojson checks = ojson::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    r["axioms"] = checks;
    if (!rep.allPassed()) throw Outcome{"refuted", kExitRefuted};
  }
  return;
}

void taskHodge0(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"f", "lambda"});
  MultiPoly f = poly(needString(p, "f", "payload"), ctx.vars, "payload.f");
  if (f.size() != 1) throw InvalidArgument("payload.f must be a monomial");
  Rational lambda = rationalField(p, "lambda", "payload");
  r["lambda"] = toString(lambda);
  r["hodge0"] = idealJson(hodgeIdealZero(f.terms().begin()->first, lambda), ctx.vars);
  return;
}

void taskCompareSummand(const json& p, Context& ctx, ojson& r) {
  allowKeys(p, "payload", {"ideal", "lambda"});
  Semigroup& s = needSemigroup(ctx, "compare-summand");
  auto ideal = idealField(need(p, "ideal", "payload"), ctx.vars, "payload.ideal");
  Rational lambda = rationalField(p, "lambda", "payload");
  auto rep = summandComparisonReport(s, ideal, lambda);
  r["lambda"] = toString(lambda);
  r["intersection"] = idealJson(rep.intersection, ctx.vars);
  r["intrinsic"] = rep.intrinsic ? idealJson(*rep.intrinsic, ctx.vars) : ojson(nullptr);
  r["match"] = rep.match ? ojson(*rep.match) : ojson(nullptr);
  r["extensible"] = rep.extensible;
  r["hilbertBasis"] = rep.hilbertBasis;
  r["note"] = rep.note;
  if (rep.match && !*rep.match) throw Outcome{"mismatch", kExitRefuted};
  return;
}

using Handler = void (*)(const json&, Context&, ojson&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"verify-feq", taskVerifyFeq},       {"bs-search", taskBsSearch},
      {"restrict-op", taskRestrictOp},     {"check-extensible", taskCheckExtensible},
      {"test-ideal", taskTestIdeal},       {"multiplier", taskMultiplier},
      {"lct", taskLct},                    {"jumping-numbers", taskJumpingNumbers},
      {"vfil", taskVfil},                  {"hodge0", taskHodge0},
      {"compare-summand", taskCompareSummand}, {"mustata-check", taskMustata},
  };
  return h;
}

std::pair<int, int> lineColumn(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

const std::vector<std::string>& jobTasks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, h] : handlers()) v.push_back(n);
    return v;
  }();
  return names;
}

std::string toolVersion() { return kVersion; }

std::string sha256Hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

JobOutcome runJobText(const std::string& text, const std::string& baseDir, const JobOptions& options) {
  auto start = std::chrono::steady_clock::now();
  JobOutcome out;
  ojson& rep = out.report;
  rep["tool"] = "bsfe";
  rep["version"] = kVersion;
  rep["task"] = nullptr;
  rep["status"] = "ok";
  ojson result;
  std::string canonicalInput;
  try {
    json job;
    try {
      job = json::parse(text);
    } catch (const json::parse_error& e) {
      auto [line, col] = lineColumn(text, e.byte);
      throw ParseError("malformed job file", line, col);
    }
    canonicalInput = job.dump();
    allowKeys(job, "job", {"version", "ring", "semigroup", "task", "payload"});
    if (need(job, "version", "job") != 1) throw InvalidArgument("unsupported job version");
    std::string task = need(job, "task", "job").get<std::string>();
    rep["task"] = task;
    Context ctx;
    ctx.options = options;
    const json& ring = need(job, "ring", "job");
    allowKeys(ring, "ring", {"variables", "quotient"});
    ctx.vars = need(ring, "variables", "ring").get<std::vector<std::string>>();
    if (ctx.vars.empty()) throw InvalidArgument("ring.variables must not be empty");
    if (ring.contains("quotient")) ctx.quotient = idealField(ring.at("quotient"), ctx.vars, "ring.quotient");
    if (job.contains("semigroup")) {
      const json& s = job.at("semigroup");
      if (s.is_string()) {
        std::filesystem::path path(s.get<std::string>());
        if (path.is_relative()) path = std::filesystem::path(baseDir) / path;
        ctx.semigroup = loadSemigroupFile(path.string());
      } else {
        ctx.semigroup = semigroupFromJson(s);
      }
    }
    Handler handler = nullptr;
    for (const auto& [n, h] : handlers())
      if (n == task) handler = h;
    if (!handler) throw InvalidArgument("unknown task '" + task + "'");
    json payload = job.contains("payload") ? job.at("payload") : json::object();
    result = ojson::object();
    handler(payload, ctx, result);
  } catch (const Outcome& o) {
    rep["status"] = o.status;
    out.exitCode = o.code;
  } catch (const ParseError& e) {
    rep["status"] = "error";
    rep["error"] = {{"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
    out.exitCode = kExitInput;
  } catch (const CapExceeded& e) {
    rep["status"] = "skipped-by-cap";
    rep["error"] = {{"message", e.what()}};
    out.exitCode = kExitNotFound;
  } catch (const NotFoundWithinBounds& e) {
    rep["status"] = "not-found";
    rep["error"] = {{"message", e.what()}};
    out.exitCode = kExitNotFound;
  } catch (const std::exception& e) {
    rep["status"] = "error";
    rep["error"] = {{"message", e.what()}};
    out.exitCode = kExitInput;
  }
  rep["exitCode"] = out.exitCode;
  rep["result"] = result;
  rep["certificate"] = {{"inputSha256", sha256Hex(canonicalInput)}, {"resultSha256", sha256Hex(result.dump())}};
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep["timing"] = {{"seconds", secs}};
  return out;
}

JobOutcome runJobFile(const std::string& path, const JobOptions& options) {
  std::ifstream in(path);
  if (!in) {
    JobOutcome out;
    out.report = {{"tool", "bsfe"}, {"version", kVersion}, {"status", "error"}, {"exitCode", kExitInput},
                  {"error", {{"message", "cannot read " + path}}}};
    out.exitCode = kExitInput;
    return out;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return runJobText(ss.str(), std::filesystem::path(path).parent_path().string(), options);
}

std::string renderTable(const ojson& report) {
  std::ostringstream os;
  std::function<void(const std::string&, const ojson&)> walk = [&](const std::string& key, const ojson& v) {
    if (v.is_object() && !v.empty()) {
      for (auto it = v.begin(); it != v.end(); ++it) walk(key.empty() ? it.key() : key + "." + it.key(), it.value());
    } else {
      os << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  };
  walk("", report);
  return os.str();
}

}  // namespace bsfe
