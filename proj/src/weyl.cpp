#include "bsfe/weyl.hpp"

#include <algorithm>

#include "bsfe/error.hpp"
#include "bsfe/grid.hpp"
#include "bsfe/parse.hpp"

namespace bsfe {

namespace {

std::vector<std::string> concat(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// theta(theta-1)...(theta-k+1) in variable `var` of `vars`.
MultiPoly falling(const std::vector<std::string>& vars, std::size_t var, int k) {
  MultiPoly r = MultiPoly::constant(vars, 1);
  Exponent e(vars.size(), 0);
  e[var] = 1;
  for (int j = 0; j < k; ++j) {
    MultiPoly lin = MultiPoly::monomial(vars, e, 1);
    lin.addTerm(Exponent(vars.size(), 0), Rational(-j));
    r = r * lin;
  }
  return r;
}

// Applies delta to a polynomial over `vars`, which must contain the x variables
// and every s variable occurring in delta.
MultiPoly applyOver(const WeylOp& delta, const MultiPoly& p0, const std::vector<std::string>& vars) {
  MultiPoly p = p0.embed(vars);
  const auto& xs = delta.xVariables();
  std::vector<std::size_t> xIdx;
  for (const auto& x : xs) {
    int i = p.variableIndex(x);
    if (i < 0) throw VariableMismatch(xs, vars);
    xIdx.push_back(static_cast<std::size_t>(i));
  }
  MultiPoly result(vars);
  for (const auto& [b, c] : delta.terms()) {
    MultiPoly q = p;
    for (std::size_t i = 0; i < b.size() && !q.isZero(); ++i)
      if (b[i] > 0) q = q.derivative(xIdx[i], b[i]);
    if (q.isZero()) continue;
    result += c.embed(vars) * q;
  }
  return result;
}

}  // namespace

WeylOp::WeylOp(std::vector<std::string> xVars, std::vector<std::string> sVars)
    : x_(std::move(xVars)), s_(std::move(sVars)), xs_(concat(x_, s_)) {}

WeylOp WeylOp::fromPoly(std::vector<std::string> xVars, std::vector<std::string> sVars, const MultiPoly& c) {
  WeylOp op(std::move(xVars), std::move(sVars));
  op.addTerm(Exponent(op.x_.size(), 0), c.embed(op.xs_));
  return op;
}

WeylOp WeylOp::partial(std::vector<std::string> xVars, std::vector<std::string> sVars, std::size_t var, int k) {
  WeylOp op(std::move(xVars), std::move(sVars));
  if (var >= op.x_.size()) throw InvalidArgument("derivative index out of range");
  Exponent b(op.x_.size(), 0);
  b[var] = k;
  op.addTerm(b, MultiPoly::constant(op.xs_, 1));
  return op;
}

WeylOp WeylOp::term(std::vector<std::string> xVars, std::vector<std::string> sVars, const Exponent& a,
                    const Exponent& b, const Exponent& g, const Rational& c) {
  WeylOp op(std::move(xVars), std::move(sVars));
  if (a.size() != op.x_.size() || b.size() != op.x_.size() || g.size() != op.s_.size())
    throw InvalidArgument("term exponents have wrong length");
  Exponent e = a;
  e.insert(e.end(), g.begin(), g.end());
  op.addTerm(b, MultiPoly::monomial(op.xs_, e, c));
  return op;
}

int WeylOp::order() const {
  int o = -1;
  for (const auto& [b, c] : terms_) o = std::max(o, totalDegree(b));
  return o;
}

int WeylOp::sDegree() const {
  int d = 0;
  for (const auto& [b, c] : terms_)
    for (const auto& [e, v] : c.terms()) {
      int sd = 0;
      for (std::size_t i = x_.size(); i < e.size(); ++i) sd += e[i];
      d = std::max(d, sd);
    }
  return d;
}

int WeylOp::sDegreeIn(std::size_t i) const {
  int d = 0;
  for (const auto& [b, c] : terms_) d = std::max(d, c.degreeIn(x_.size() + i));
  return d;
}

MultiPoly WeylOp::coefficient(const Exponent& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? MultiPoly(xs_) : it->second;
}

void WeylOp::addTerm(const Exponent& b, const MultiPoly& c) {
  if (b.size() != x_.size()) throw InvalidArgument("derivative exponent has wrong length");
  if (c.isZero()) return;
  MultiPoly ce = c.embed(xs_);
  auto [it, inserted] = terms_.try_emplace(b, ce);
  if (!inserted) {
    it->second += ce;
    if (it->second.isZero()) terms_.erase(it);
  }
}

void WeylOp::checkSame(const WeylOp& o) const {
  if (x_ != o.x_) throw VariableMismatch(x_, o.x_);
  if (s_ != o.s_) throw VariableMismatch(s_, o.s_);
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
  checkSame(o);
  for (const auto& [b, c] : o.terms_) addTerm(b, c);
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) {
  checkSame(o);
  for (const auto& [b, c] : o.terms_) addTerm(b, -c);
  return *this;
}

WeylOp WeylOp::operator-() const {
  WeylOp r = *this;
  for (auto& [b, c] : r.terms_) c = -c;
  return r;
}

WeylOp operator*(WeylOp a, const Rational& c) {
  if (c == 0) return WeylOp(a.x_, a.s_);
  for (auto& [b, p] : a.terms_) p *= c;
  return a;
}

bool operator==(const WeylOp& a, const WeylOp& b) {
  a.checkSame(b);
  return a.terms_ == b.terms_;
}

WeylOp operator*(const WeylOp& a, const WeylOp& b) {
  a.checkSame(b);
  WeylOp r(a.x_, a.s_);
  const std::size_t d = a.x_.size();
  for (const auto& [b1, c1] : a.terms_) {
    for (const auto& [b2, c2] : b.terms_) {
      // d^b1 c2 = sum_{k <= b1} prod_i binom(b1_i, k_i) (d^k c2) d^(b1 - k).
      Exponent k(d, 0), out(d);
      while (true) {
        MultiPoly dc = c2;
        Integer weight = 1;
        for (std::size_t i = 0; i < d && !dc.isZero(); ++i) {
          if (k[i] == 0) continue;
          dc = dc.derivative(i, k[i]);
          weight *= binomial(b1[i], k[i]);
        }
        if (!dc.isZero()) {
          for (std::size_t i = 0; i < d; ++i) out[i] = b1[i] - k[i] + b2[i];
          MultiPoly coeff = c1 * dc;
          coeff *= Rational(weight);
          r.addTerm(out, coeff);
        }
        std::size_t i = 0;
        while (i < d && k[i] == b1[i]) k[i++] = 0;
        if (i == d) break;
        ++k[i];
      }
    }
  }
  return r;
}

WeylOp WeylOp::specializeS(const std::vector<long>& t) const {
  RationalVector r;
  for (long v : t) r.emplace_back(v);
  return specializeS(r);
}

WeylOp WeylOp::specializeS(const RationalVector& t) const {
  if (t.size() != s_.size()) throw InvalidArgument("s assignment has wrong length");
  std::map<std::string, Rational> a;
  for (std::size_t i = 0; i < s_.size(); ++i) a[s_[i]] = t[i];
  WeylOp r(x_, {});
  for (const auto& [b, c] : terms_) r.addTerm(b, c.evaluate(a).embed(x_));
  return r;
}

WeylOp WeylOp::withSVariables(const std::vector<std::string>& sVars) const {
  WeylOp r(x_, sVars);
  for (const auto& [b, c] : terms_) r.addTerm(b, c.embed(r.xs_));
  return r;
}

std::string WeylOp::toString() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    std::string dpart;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] == 0) continue;
      if (!dpart.empty()) dpart += "*";
      dpart += "d_" + x_[i];
      if (b[i] >= 2) dpart += "^" + std::to_string(b[i]);
    }
    std::string piece;
    bool negative = false;
    if (c.size() == 1) {
      MultiPoly cc = c;
      if (cc.leadingCoefficient() < 0) {
        negative = true;
        cc = -cc;
      }
      std::string cs = cc.toString();
      if (dpart.empty())
        piece = cs;
      else if (cs == "1")
        piece = dpart;
      else
        piece = cs + "*" + dpart;
    } else {
      piece = "(" + c.toString() + ")";
      if (!dpart.empty()) piece += "*" + dpart;
    }
    if (first)
      out = negative ? "-" + piece : piece;
    else
      out += (negative ? " - " : " + ") + piece;
    first = false;
  }
  return out;
}

WeylOp weylMultiply(const WeylOp& a, const WeylOp& b) { return a * b; }

WeylOp weylCommutator(const WeylOp& a, const WeylOp& b) { return a * b - b * a; }

namespace {

WeylOp evalOp(const ExprNode& n, const std::vector<std::string>& x, const std::vector<std::string>& s) {
  switch (n.kind) {
    case ExprNode::Kind::Number:
      return WeylOp::fromPoly(x, s, MultiPoly::constant(concat(x, s), n.value));
    case ExprNode::Kind::Symbol: {
      if (n.name.rfind("d_", 0) == 0) {
        auto it = std::find(x.begin(), x.end(), n.name.substr(2));
        if (it == x.end()) throw ParseError("derivative of unknown variable '" + n.name + "'", n.line, n.column);
        return WeylOp::partial(x, s, static_cast<std::size_t>(it - x.begin()));
      }
      auto all = concat(x, s);
      if (std::find(all.begin(), all.end(), n.name) == all.end())
        throw ParseError("unknown symbol '" + n.name + "'", n.line, n.column);
      return WeylOp::fromPoly(x, s, MultiPoly::variable(all, n.name));
    }
    case ExprNode::Kind::Add:
      return evalOp(*n.children[0], x, s) + evalOp(*n.children[1], x, s);
    case ExprNode::Kind::Sub:
      return evalOp(*n.children[0], x, s) - evalOp(*n.children[1], x, s);
    case ExprNode::Kind::Mul:
      return evalOp(*n.children[0], x, s) * evalOp(*n.children[1], x, s);
    case ExprNode::Kind::Neg:
      return -evalOp(*n.children[0], x, s);
    case ExprNode::Kind::Pow: {
      WeylOp base = evalOp(*n.children[0], x, s);
      WeylOp r = WeylOp::fromPoly(x, s, MultiPoly::constant(concat(x, s), 1));
      for (int i = 0; i < n.exponent; ++i) r = r * base;
      return r;
    }
  }
  return WeylOp(x, s);
}

}  // namespace

WeylOp parseWeylOp(const std::string& text, const std::vector<std::string>& xVars, const std::vector<std::string>& sVars) {
  return evalOp(*parseExpression(text), xVars, sVars);
}

MultiPoly applyWeyl(const WeylOp& delta, const MultiPoly& p) {
  if (p.variables() == delta.xVariables() || p.isConstant()) {
    if (delta.sDegree() > 0) throw InvalidArgument("operator has s variables; an s assignment is required");
    MultiPoly r = applyOver(delta, p.embed(delta.xVariables()), delta.coefficientVariables());
    return r.embed(delta.xVariables());
  }
  return applyOver(delta, p, p.variables());
}

MultiPoly applyWeyl(const WeylOp& delta, const MultiPoly& p, const std::optional<RationalVector>& sValues) {
  if (!sValues) return applyWeyl(delta, p);
  return applyWeyl(delta.specializeS(*sValues), p);
}

LaurentLoc applyLocalized(const WeylOp& delta, const LaurentLoc& v) {
  const auto& ctx = v.context();
  const auto& vars = ctx->variables();
  if (delta.order() <= 0) {
    // Order zero acts by multiplication.
    MultiPoly c = delta.coefficient(Exponent(delta.xVariables().size(), 0));
    return v * c.embed(vars);
  }
  const int t = v.denomExponent();
  if (t == 0) return LaurentLoc(ctx, applyOver(delta, v.numerator(), vars), 0);
  MultiPoly ft = ctx->productPower(t).restrictTo(delta.coefficientVariables());
  WeylOp g = WeylOp::fromPoly(delta.xVariables(), delta.sVariables(), ft);
  WeylOp rho = weylCommutator(delta, g);
  LaurentLoc dh(ctx, applyOver(delta, v.numerator(), vars), 0);
  return (dh - applyLocalized(rho, v)).divideByProductPower(t);
}

std::vector<std::string> thetaVariables(const std::vector<std::string>& xVars) {
  std::vector<std::string> out;
  for (const auto& x : xVars) out.push_back("theta_" + x);
  return out;
}

std::vector<GradedPiece> gradedPieces(const WeylOp& delta) {
  const auto& x = delta.xVariables();
  const std::size_t d = x.size();
  std::vector<std::string> vars = concat(thetaVariables(x), delta.sVariables());
  std::map<std::vector<int>, MultiPoly> pieces;
  for (const auto& [b, c] : delta.terms()) {
    MultiPoly fall = MultiPoly::constant(vars, 1);
    for (std::size_t i = 0; i < d; ++i)
      if (b[i] > 0) fall = fall * falling(vars, i, b[i]);
    for (const auto& [e, coeff] : c.terms()) {
      std::vector<int> mu(d);
      for (std::size_t i = 0; i < d; ++i) mu[i] = e[i] - b[i];
      Exponent se(vars.size(), 0);
      for (std::size_t j = d; j < e.size(); ++j) se[j] = e[j];
      auto it = pieces.try_emplace(mu, MultiPoly(vars)).first;
      it->second += fall.mulMonomial(se, coeff);
    }
  }
  std::vector<GradedPiece> out;
  for (auto& [mu, c] : pieces)
    if (!c.isZero()) out.push_back({mu, std::move(c)});
  return out;
}

PreservationResult preservesIdeal(const WeylOp& delta, const MonomialIdeal& ideal) {
  const auto& x = delta.xVariables();
  const int d = static_cast<int>(x.size());
  if (ideal.dimension() != d) throw InvalidArgument("ideal dimension differs from the number of variables");
  PreservationResult res;
  if (ideal.isZero()) return res;
  const Exponent M = ideal.maxExponents();
  const auto thetas = thetaVariables(x);
  for (const auto& piece : gradedPieces(delta)) {
    const auto& mu = piece.shift;
    std::vector<int> T(d);
    for (int i = 0; i < d; ++i) T[i] = std::max(M[i], M[i] - mu[i]);
    // Each coordinate is either a fixed value below T_i or free with v_i >= T_i
    // (encoded as the value T_i).
    forEachInBox(Exponent(T.begin(), T.end()), [&](const Exponent& rep) {
      if (!res.preserved) return;
      Exponent w(d);
      for (int i = 0; i < d; ++i) {
        w[i] = rep[i] + mu[i];
        if (w[i] < 0) return;  // the falling factorials vanish identically here
      }
      if (!ideal.contains(rep) || ideal.contains(w)) return;
      ExponentRegion region{mu, std::vector<int>(rep.begin(), rep.end()), std::vector<bool>(d)};
      std::vector<MultiPoly> images;
      const auto& vars = piece.coefficient.variables();
      std::vector<std::string> gridVars;
      for (int i = 0; i < d; ++i) {
        region.free[i] = rep[i] == T[i];
        MultiPoly th = MultiPoly::variable(vars, thetas[i]);
        if (region.free[i]) {
          images.push_back(th + MultiPoly::constant(vars, T[i]));
          gridVars.push_back(thetas[i]);
        } else {
          images.push_back(MultiPoly::constant(vars, rep[i]));
        }
      }
      for (std::size_t j = d; j < vars.size(); ++j) {
        images.push_back(MultiPoly::variable(vars, vars[j]));
        gridVars.push_back(vars[j]);
      }
      res.regions.push_back(region);
      MultiPoly c = piece.coefficient.compose(images, vars);
      int m = std::max(c.totalDegree(), 0);
      if (gridZeroTest(c, gridVars, m)) return;
      res.preserved = false;
      for (const auto& t : gridPoints(static_cast<int>(gridVars.size()), m)) {
        if (specializeVariables(c, gridVars, t).isZero()) continue;
        Exponent v(rep.begin(), rep.end());
        std::size_t g = 0;
        for (int i = 0; i < d; ++i)
          if (region.free[i]) v[i] = T[i] + static_cast<int>(t[g++]);
        RationalVector sv;
        for (; g < t.size(); ++g) sv.emplace_back(t[g]);
        res.witness = v;
        if (!delta.sVariables().empty()) res.witnessS = sv;
        MultiPoly mono = MultiPoly::monomial(x, v);
        res.witnessImage = applyWeyl(delta, mono, res.witnessS);
        break;
      }
    });
    if (!res.preserved) break;
  }
  return res;
}

}  // namespace bsfe
