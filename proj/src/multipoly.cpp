#include "bsfe/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bsfe/error.hpp"

namespace bsfe {

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  int da = bsfe::totalDegree(a), db = bsfe::totalDegree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

int totalDegree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool dividesExponent(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

MultiPoly::MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

MultiPoly MultiPoly::constant(std::vector<std::string> variables, const Rational& c) {
  MultiPoly p(std::move(variables));
  p.addTerm(Exponent(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, const std::string& name) {
  MultiPoly p(std::move(variables));
  int idx = p.variableIndex(name);
  if (idx < 0) throw InvalidArgument("unknown variable '" + name + "' in " + formatList(p.vars_));
  Exponent e(p.vars_.size(), 0);
  e[idx] = 1;
  p.addTerm(e, 1);
  return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> variables, Exponent e, const Rational& c) {
  MultiPoly p(std::move(variables));
  if (e.size() != p.vars_.size()) throw InvalidArgument("exponent length does not match variable count");
  p.addTerm(e, c);
  return p;
}

int MultiPoly::variableIndex(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool MultiPoly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && bsfe::totalDegree(terms_.begin()->first) == 0);
}

Rational MultiPoly::constantTerm() const {
  if (terms_.empty()) return 0;
  auto it = terms_.rbegin();  // smallest in grlex
  return bsfe::totalDegree(it->first) == 0 ? it->second : Rational(0);
}

int MultiPoly::totalDegree() const { return terms_.empty() ? -1 : bsfe::totalDegree(terms_.begin()->first); }

int MultiPoly::degreeIn(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

Rational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Exponent& MultiPoly::leadingExponent() const {
  if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
  return terms_.begin()->first;
}

const Rational& MultiPoly::leadingCoefficient() const {
  if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
  return terms_.begin()->second;
}

void MultiPoly::addTerm(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void alignVariables(MultiPoly& a, MultiPoly& b) {
  if (a.vars_ == b.vars_) return;
  if (a.isConstant()) {
    a = MultiPoly::constant(b.vars_, a.constantTerm());
    return;
  }
  if (b.isConstant()) {
    b = MultiPoly::constant(a.vars_, b.constantTerm());
    return;
  }
  throw VariableMismatch(a.vars_, b.vars_);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  MultiPoly rhs = o;
  alignVariables(*this, rhs);
  for (const auto& [e, c] : rhs.terms_) addTerm(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  MultiPoly rhs = o;
  alignVariables(*this, rhs);
  for (const auto& [e, c] : rhs.terms_) addTerm(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a0, const MultiPoly& b0) {
  MultiPoly a = a0, b = b0;
  alignVariables(a, b);
  MultiPoly r(a.vars_);
  Exponent e(a.vars_.size());
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      r.addTerm(e, prod);
    }
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const MultiPoly& a0, const MultiPoly& b0) {
  if (a0.vars_ == b0.vars_) return a0.terms_ == b0.terms_;
  MultiPoly a = a0, b = b0;
  alignVariables(a, b);
  return a.terms_ == b.terms_;
}

MultiPoly MultiPoly::mulMonomial(const Exponent& e, const Rational& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  Exponent f(e.size());
  for (const auto& [ea, ca] : terms_) {
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = ea[i] + e[i];
    r.terms_.emplace_hint(r.terms_.end(), f, ca * c);
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(vars_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const { return derivative(var, 1); }

MultiPoly MultiPoly::derivative(std::size_t var, int k) const {
  MultiPoly r(vars_);
  if (k == 0) return *this;
  for (const auto& [e, c] : terms_) {
    if (e[var] < k) continue;
    Rational factor = c;
    for (int j = 0; j < k; ++j) factor *= e[var] - j;
    Exponent f = e;
    f[var] -= k;
    r.addTerm(f, factor);
  }
  return r;
}

MultiPoly MultiPoly::evaluate(const std::map<std::string, Rational>& assignment) const {
  std::vector<std::string> rest;
  std::vector<int> keep;
  std::vector<const Rational*> value(vars_.size(), nullptr);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = assignment.find(vars_[i]);
    if (it == assignment.end()) {
      rest.push_back(vars_[i]);
      keep.push_back(static_cast<int>(i));
    } else {
      value[i] = &it->second;
    }
  }
  MultiPoly r(rest);
  Exponent f(rest.size());
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < vars_.size() && v != 0; ++i) {
      if (!value[i] || e[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), value[i]->get_num_mpz_t(), e[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), value[i]->get_den_mpz_t(), e[i]);
      v *= pw;
    }
    for (std::size_t j = 0; j < keep.size(); ++j) f[j] = e[keep[j]];
    r.addTerm(f, v);
  }
  return r;
}

Rational MultiPoly::evaluateAt(const RationalVector& point) const {
  if (point.size() != vars_.size()) throw InvalidArgument("evaluation point has wrong dimension");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < e.size() && v != 0; ++i) {
      for (int j = 0; j < e[i]; ++j) v *= point[i];
    }
    total += v;
  }
  return total;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images, const std::vector<std::string>& target) const {
  if (images.size() != vars_.size()) throw InvalidArgument("compose: one image per variable required");
  std::vector<MultiPoly> imgs;
  for (const auto& p : images) imgs.push_back(p.embed(target));
  std::vector<std::vector<MultiPoly>> powers(vars_.size());
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * imgs[i]);
      t = t * pw[e[i]];
    }
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::embed(const std::vector<std::string>& target) const {
  if (target == vars_) return *this;
  std::vector<int> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(target.begin(), target.end(), vars_[i]);
    if (it == target.end()) {
      if (degreeIn(i) <= 0) {
        where[i] = -1;
        continue;
      }
      throw VariableMismatch(vars_, target);
    }
    where[i] = static_cast<int>(it - target.begin());
  }
  MultiPoly r(target);
  Exponent f(target.size());
  for (const auto& [e, c] : terms_) {
    std::fill(f.begin(), f.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (where[i] >= 0) f[where[i]] = e[i];
    r.addTerm(f, c);
  }
  return r;
}

MultiPoly MultiPoly::restrictTo(const std::vector<std::string>& target) const { return embed(target); }

std::pair<MultiPoly, MultiPoly> MultiPoly::divideWithRemainder(const MultiPoly& d0) const {
  MultiPoly p = *this, d = d0;
  alignVariables(p, d);
  if (d.isZero()) throw InvalidArgument("division by the zero polynomial");
  MultiPoly q(p.vars_), r(p.vars_);
  const Exponent& ld = d.leadingExponent();
  const Rational& lc = d.leadingCoefficient();
  Exponent shift(ld.size());
  while (!p.isZero()) {
    auto [lp, cp] = *p.terms_.begin();
    if (dividesExponent(ld, lp)) {
      for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = lp[i] - ld[i];
      Rational c = cp / lc;
      q.addTerm(shift, c);
      p -= d.mulMonomial(shift, c);
    } else {
      r.addTerm(lp, cp);
      p.terms_.erase(p.terms_.begin());
    }
  }
  return {q, r};
}

std::optional<MultiPoly> MultiPoly::divideExact(const MultiPoly& d0) const {
  MultiPoly p = *this, d = d0;
  alignVariables(p, d);
  if (d.isZero()) throw InvalidArgument("division by the zero polynomial");
  MultiPoly q(p.vars_);
  const Exponent ld = d.leadingExponent();
  const Rational lc = d.leadingCoefficient();
  Exponent shift(ld.size());
  while (!p.isZero()) {
    const auto& [lp, cp] = *p.terms_.begin();
    // With a single divisor a non-divisible leading term survives into the
    // remainder, so the division cannot be exact.
    if (!dividesExponent(ld, lp)) return std::nullopt;
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = lp[i] - ld[i];
    Rational c = cp / lc;
    q.addTerm(shift, c);
    p -= d.mulMonomial(shift, c);
  }
  return q;
}

MultiPoly MultiPoly::monic() const {
  if (isZero()) return *this;
  MultiPoly r = *this;
  r *= Rational(1) / leadingCoefficient();
  return r;
}

std::string MultiPoly::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    bool isConst = bsfe::totalDegree(e) == 0;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || isConst) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars_[i];
      if (e[i] >= 2) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::vector<Rational> univariateCoefficients(const MultiPoly& p, std::size_t var) {
  std::vector<Rational> out(std::max(p.degreeIn(var), 0) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0) throw InvalidArgument("polynomial is not univariate in " + p.variables()[var]);
    out[e[var]] += c;
  }
  return out;
}

MultiPoly fromUnivariate(const std::vector<std::string>& vars, std::size_t var, const std::vector<Rational>& coeffs) {
  MultiPoly p(vars);
  Exponent e(vars.size(), 0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    e[var] = static_cast<int>(k);
    p.addTerm(e, coeffs[k]);
  }
  return p;
}

MultiPoly binomialPoly(const std::vector<std::string>& vars, std::size_t var, int k) {
  MultiPoly r = MultiPoly::constant(vars, 1);
  Exponent e(vars.size(), 0);
  e[var] = 1;
  Integer fact = 1;
  for (int j = 0; j < k; ++j) {
    MultiPoly lin = MultiPoly::monomial(vars, e, 1);
    lin.addTerm(Exponent(vars.size(), 0), Rational(-j));
    r = r * lin;
    fact *= j + 1;
  }
  r *= Rational(1) / Rational(fact);
  return r;
}

}  // namespace bsfe
