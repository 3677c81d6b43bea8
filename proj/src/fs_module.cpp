#include "bsfe/fs_module.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "bsfe/error.hpp"

namespace bsfe {

namespace {

std::vector<std::string> defaultSNames(std::size_t l) {
  if (l == 1) return {"s"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < l; ++i) out.push_back("s" + std::to_string(i + 1));
  return out;
}

std::vector<std::string> concat(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

WeylOp adaptOperator(const WeylOp& op, const FsContext& ctx) {
  if (op.xVariables() != ctx.xVariables()) throw VariableMismatch(op.xVariables(), ctx.xVariables());
  if (op.sVariables() == ctx.sVariables()) return op;
  // Parameters absent from the operator's list simply do not occur.
  WeylOp r(ctx.xVariables(), ctx.sVariables());
  for (const auto& [b, c] : op.terms()) {
    r.addTerm(b, c.embed(ctx.variables()));
  }
  return r;
}

}  // namespace

FsContext::FsContext(std::vector<std::string> xVars, std::vector<MultiPoly> f, std::vector<std::string> sVars)
    : x_(std::move(xVars)), s_(sVars.empty() ? defaultSNames(f.size()) : std::move(sVars)) {
  if (f.empty()) throw InvalidArgument("the tuple f must be nonempty");
  if (s_.size() != f.size()) throw InvalidArgument("one s variable per entry of f required");
  xs_ = concat(x_, s_);
  for (auto& fi : f) {
    if (fi.isZero()) throw InvalidArgument("entries of f must be nonzero");
    f_.push_back(fi.embed(x_));
  }
  loc_ = makeLocContext(f_, xs_);
  locX_ = makeLocContext(f_, x_);
  for (std::size_t r = 0; r < x_.size(); ++r) {
    dF_.push_back(loc_->product().derivative(r));
    MultiPoly e(xs_);
    for (std::size_t i = 0; i < f_.size(); ++i) {
      MultiPoly si = MultiPoly::variable(xs_, s_[i]);
      e += si * loc_->f()[i].derivative(r) * loc_->cofactor(i);
    }
    e_.push_back(std::move(e));
  }
}

FsContextPtr makeFsContext(std::vector<std::string> xVars, std::vector<MultiPoly> f, std::vector<std::string> sVars) {
  return std::make_shared<const FsContext>(std::move(xVars), std::move(f), std::move(sVars));
}

FsElement::FsElement(FsContextPtr ctx, LaurentLoc coeff) : ctx_(std::move(ctx)), coeff_(std::move(coeff)) {
  if (!coeff_.context()->sameTuple(*ctx_->loc())) throw InvalidArgument("coefficient lives over a different tuple");
}

FsElement::FsElement(FsContextPtr ctx, const MultiPoly& numerator, int denomExponent)
    : ctx_(std::move(ctx)), coeff_(ctx_->loc(), numerator.embed(ctx_->variables()), denomExponent) {}

std::vector<int> FsElement::sDegrees() const {
  std::vector<int> out;
  const std::size_t d = ctx_->xVariables().size();
  for (std::size_t i = 0; i < ctx_->length(); ++i) out.push_back(std::max(coeff_.numerator().degreeIn(d + i), 0));
  return out;
}

FsElement& FsElement::operator+=(const FsElement& o) {
  coeff_ += o.coeff_;
  return *this;
}

FsElement& FsElement::operator-=(const FsElement& o) {
  coeff_ -= o.coeff_;
  return *this;
}

std::string FsElement::toString() const {
  std::string fs;
  for (std::size_t i = 0; i < ctx_->length(); ++i) {
    if (i) fs += "*";
    fs += "(" + ctx_->f()[i].toString() + ")^" + ctx_->sVariables()[i];
  }
  return "(" + coeff_.toString() + ")*" + fs;
}

FsElement fsApply(const WeylOp& delta0, const FsElement& v) {
  const FsContext& ctx = *v.context();
  WeylOp delta = adaptOperator(delta0, ctx);
  const auto& loc = ctx.loc();
  std::map<Exponent, LaurentLoc, GrlexGreater> memo;
  const std::size_t d = ctx.xVariables().size();
  // d^b applied to v, built from d^(b - e_r) by one more derivative.
  std::function<const LaurentLoc&(const Exponent&)> derived = [&](const Exponent& b) -> const LaurentLoc& {
    auto it = memo.find(b);
    if (it != memo.end()) return it->second;
    if (totalDegree(b) == 0) return memo.emplace(b, v.coeff()).first->second;
    std::size_t r = 0;
    while (b[r] == 0) ++r;
    Exponent prev = b;
    --prev[r];
    const LaurentLoc& w = derived(prev);
    const MultiPoly& n = w.numerator();
    const int k = w.denomExponent();
    MultiPoly num = n.derivative(r) * loc->product();
    if (k != 0) num -= n * ctx.productDerivative(r) * Rational(k);
    num += n * ctx.logDerivativeNumerator(r);
    return memo.emplace(b, LaurentLoc(loc, std::move(num), k + 1)).first->second;
  };
  LaurentLoc out(loc, MultiPoly(ctx.variables()), 0);
  for (const auto& [b, c] : delta.terms()) {
    if (b.size() != d) throw InvalidArgument("operator has wrong number of variables");
    out += derived(b) * c;
  }
  return FsElement(v.context(), out.reduced());
}

LaurentLoc fPower(const LocContextPtr& loc, const std::vector<long>& c) {
  if (c.size() != loc->f().size()) throw InvalidArgument("exponent vector length differs from the tuple length");
  MultiPoly num = MultiPoly::constant(loc->variables(), 1);
  int k = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= 0) {
      num = num * loc->f()[i].pow(static_cast<unsigned>(c[i]));
    } else {
      num = num * loc->cofactor(i).pow(static_cast<unsigned>(-c[i]));
      k += static_cast<int>(-c[i]);
    }
  }
  return LaurentLoc(loc, num, k);
}

LaurentLoc specialize(const FsElement& v, const std::vector<long>& t) {
  const FsContext& ctx = *v.context();
  if (t.size() != ctx.length()) throw InvalidArgument("specialization point has wrong length");
  MultiPoly n = specializeVariables(v.coeff().numerator(), ctx.sVariables(), t).embed(ctx.xVariables());
  LaurentLoc base(ctx.locX(), n, v.coeff().denomExponent());
  return base * fPower(ctx.locX(), t);
}

std::string toString(FeqKind k) {
  switch (k) {
    case FeqKind::Principal:
      return "principal";
    case FeqKind::BmsMulti:
      return "bmsMulti";
    case FeqKind::Relative:
      return "relative";
  }
  return "?";
}

FeqKind parseFeqKind(const std::string& s) {
  if (s == "principal") return FeqKind::Principal;
  if (s == "bmsMulti") return FeqKind::BmsMulti;
  if (s == "relative") return FeqKind::Relative;
  throw InvalidArgument("unknown functional-equation kind '" + s + "'");
}

void FeqSpec::validate(std::size_t l) const {
  if (terms.empty()) throw InvalidArgument("functional equation without operators");
  if (b.isZero()) throw InvalidArgument("b must be nonzero");
  for (const auto& v : b.variables())
    if (v != "s" && b.degreeIn(b.variableIndex(v)) > 0) throw InvalidArgument("b must be a polynomial in s only");
  if (kind != FeqKind::BmsMulti) {
    if (l != 1) throw InvalidArgument(toString(kind) + " equations need a single f");
    if (terms.size() != 1 || terms[0].c != std::vector<long>{1})
      throw InvalidArgument(toString(kind) + " equations have exactly one operator with c = (1)");
  }
  if (kind == FeqKind::Principal && !g.isZero() && !(g.isConstant() && g.constantTerm() == 1))
    throw InvalidArgument("principal equations have g = 1; use the relative kind");
  std::vector<std::vector<long>> seen;
  for (const auto& t : terms) {
    if (t.c.size() != l) throw InvalidArgument("c-vector " + formatVector(t.c) + " has wrong length");
    long sum = 0;
    for (long x : t.c) sum += x;
    if (sum != 1) throw InvalidArgument("c-vector " + formatVector(t.c) + " does not sum to 1");
    if (std::find(seen.begin(), seen.end(), t.c) != seen.end())
      throw InvalidArgument("c-vector " + formatVector(t.c) + " appears twice");
    seen.push_back(t.c);
  }
}

namespace {

MultiPoly gOf(const FeqSpec& spec, const std::vector<std::string>& vars) {
  if (spec.g.isZero() && spec.g.variables().empty()) return MultiPoly::constant(vars, 1);
  return spec.g.embed(vars);
}

}  // namespace

MultiPoly bAtSum(const MultiPoly& b, const std::vector<std::string>& vars, const std::vector<std::string>& sNames) {
  MultiPoly sum(vars);
  for (const auto& s : sNames) sum += MultiPoly::variable(vars, s);
  MultiPoly bs = b.embed({"s"});
  return bs.compose({sum}, vars);
}

FsElement feqSource(const FsContextPtr& ctx, const std::vector<long>& c, const MultiPoly& g) {
  const auto& vars = ctx->variables();
  MultiPoly coeff = g.embed(vars);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] < 0) coeff = coeff * binomialPoly(vars, ctx->xVariables().size() + i, static_cast<int>(-c[i]));
  return FsElement(ctx, fPower(ctx->loc(), c) * coeff);
}

FsElement feqDiscrepancy(const FeqSpec& spec, const FsContextPtr& ctx) {
  spec.validate(ctx->length());
  const auto& vars = ctx->variables();
  MultiPoly g = gOf(spec, ctx->xVariables()).embed(vars);
  FsElement total(ctx, MultiPoly(vars), 0);
  for (const auto& term : spec.terms) total += fsApply(term.op, feqSource(ctx, term.c, g));
  total -= FsElement(ctx, bAtSum(spec.b, vars, ctx->sVariables()) * g, 0);
  return total.reduced();
}

FeqVerification verifyFeqFormal(const FeqSpec& spec, const FsContextPtr& ctx) {
  FeqVerification res;
  FsElement diff = feqDiscrepancy(spec, ctx);
  res.verified = diff.isZero();
  if (!res.verified) res.discrepancy = diff;
  return res;
}

SpecializationError::SpecializationError(std::vector<long> t, const std::string& what)
    : Error("action failed at t = " + formatVector(t) + ": " + what), t_(std::move(t)) {}

int specializedGridBound(const FeqSpec& spec) {
  int m = std::max(spec.b.totalDegree(), 0);
  for (const auto& t : spec.terms) {
    int order = t.orderHint >= 0 ? t.orderHint : std::max(t.op.order(), 0);
    int sdeg = t.sDegreeHint >= 0 ? t.sDegreeHint : t.op.sDegree();
    int neg = 0;
    for (long c : t.c)
      if (c < 0) neg += static_cast<int>(-c);
    m = std::max(m, sdeg + order + neg);
  }
  return m;
}

SpecializedAction polynomialRingAction() {
  return [](const FeqTerm& term, const std::vector<long>& t, const MultiPoly& element) {
    WeylOp op = term.op.sVariables().empty() ? term.op : term.op.specializeS(t);
    return applyWeyl(op, element.embed(op.xVariables()));
  };
}

FeqVerification verifyFeqSpecialized(const FeqSpec& spec0, const FsContextPtr& ctx, const SpecializedAction& applyAt,
                                     const SpecializedOptions& options) {
  spec0.validate(ctx->length());
  FeqSpec spec = spec0;
  for (auto& term : spec.terms)
    if (!term.op.xVariables().empty()) term.op = adaptOperator(term.op, *ctx);
  const auto& x = ctx->xVariables();
  const std::size_t l = ctx->length();
  FeqVerification res;
  res.gridBound = options.gridBound.value_or(specializedGridBound(spec));
  const auto points = gridPoints(static_cast<int>(l), res.gridBound);
  res.pointsChecked = points.size();
  MultiPoly g = gOf(spec, x);
  MultiPoly bs = spec.b.embed({"s"});
  auto nf = [&](const MultiPoly& p) { return options.normalForm ? options.normalForm(p) : p; };

  // Returns true when the identity holds at points[idx].
  auto check = [&](std::size_t idx) -> bool {
    const auto& t = points[idx];
    MultiPoly lhs(x);
    for (const auto& term : spec.terms) {
      Rational weight = 1;
      std::vector<long> e(l);
      bool vanishes = false;
      for (std::size_t i = 0; i < l; ++i) {
        e[i] = t[i] + term.c[i];
        if (term.c[i] < 0) weight *= Rational(binomial(t[i], -term.c[i]));
        if (e[i] < 0) vanishes = true;
      }
      if (vanishes || weight == 0) continue;
      MultiPoly elem = g * weight;
      for (std::size_t i = 0; i < l; ++i) elem = elem * ctx->f()[i].pow(static_cast<unsigned>(e[i]));
      lhs += nf(applyAt(term, t, nf(elem))).embed(x);
    }
    long sum = 0;
    for (long v : t) sum += v;
    MultiPoly rhs = g * bs.evaluateAt({Rational(sum)});
    for (std::size_t i = 0; i < l; ++i) rhs = rhs * ctx->f()[i].pow(static_cast<unsigned>(t[i]));
    return nf(lhs) == nf(rhs);
  };

  const int threads = std::max(1, options.threads);
  std::vector<char> failed(points.size(), 0);
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        failed[i] = check(i) ? 0 : 1;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        throw SpecializationError(points[i], e.what());
      }
    }
    if (failed[i]) {
      res.witness = points[i];
      return res;
    }
  }
  res.verified = true;
  return res;
}

bool gridZeroTest(const FsElement& v, int m) {
  return gridZeroTest(v.coeff().numerator(), v.context()->sVariables(), m);
}

}  // namespace bsfe
