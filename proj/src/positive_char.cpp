#include "bsfe/positive_char.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "bsfe/error.hpp"
#include "bsfe/toric_summand.hpp"

namespace bsfe {

namespace {

long modp(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

long mulmod(long a, long b, long p) { return static_cast<long>(static_cast<__int128>(a) * b % p); }

long ceilTimes(const Rational& lambda, long q) {
  Integer n = ceilOf(lambda * Rational(q));
  if (!n.fits_slong_p()) throw CapExceeded("exponent ceil(q*lambda) does not fit in a long");
  return n.get_si();
}

void requirePrime(long p) {
  if (!isPrime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

void requireLambda(const Rational& lambda) {
  if (lambda < 0) throw InvalidArgument("lambda must be non-negative");
}

// Exponents of I^n as A k with |k| = n, enumerated without minimalization.
void forEachPowerExponent(const std::vector<Exponent>& gens, long n, const std::function<void(const Exponent&)>& visit) {
  const std::size_t r = gens.size();
  const std::size_t d = gens.front().size();
  Exponent w(d, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t j, long left) {
    if (j + 1 == r) {
      for (std::size_t i = 0; i < d; ++i) w[i] += static_cast<int>(left * gens[j][i]);
      visit(w);
      for (std::size_t i = 0; i < d; ++i) w[i] -= static_cast<int>(left * gens[j][i]);
      return;
    }
    for (long k = 0; k <= left; ++k) {
      rec(j + 1, left - k);
      for (std::size_t i = 0; i < d; ++i) w[i] += gens[j][i];
    }
    for (std::size_t i = 0; i < d; ++i) w[i] -= static_cast<int>((left + 1) * gens[j][i]);
  };
  rec(0, n);
}

double compositionCount(long n, std::size_t r) {
  double c = 1;
  for (std::size_t j = 1; j < r; ++j) c = c * static_cast<double>(n + static_cast<long>(j)) / static_cast<double>(j);
  return c;
}

// Exists k in N^r with |k| = n and sum_j k_j a_j <= c componentwise.
bool powerBelow(const std::vector<Exponent>& a, long n, const std::vector<long>& c) {
  const std::size_t r = a.size(), d = c.size();
  std::vector<long> used(d, 0);
  // suffixMin[j][i] = min_{j' >= j} a_{j', i}
  std::vector<std::vector<long>> suffixMin(r + 1, std::vector<long>(d, std::numeric_limits<long>::max()));
  for (std::size_t j = r; j-- > 0;)
    for (std::size_t i = 0; i < d; ++i) suffixMin[j][i] = std::min<long>(suffixMin[j + 1][i], a[j][i]);
  std::function<bool(std::size_t, long)> rec = [&](std::size_t j, long left) -> bool {
    for (std::size_t i = 0; i < d; ++i)
      if (used[i] + left * suffixMin[j][i] > c[i]) return false;
    if (j + 1 == r) return true;  // the bound above is then exact
    if (j + 2 == r) {
      // t copies of a_j and left - t of a_{j+1}.
      long lo = 0, hi = left;
      for (std::size_t i = 0; i < d; ++i) {
        long slope = a[j][i] - a[j + 1][i];
        long rhs = c[i] - used[i] - left * a[j + 1][i];
        if (slope > 0) {
          long bound = rhs >= 0 ? rhs / slope : -((-rhs + slope - 1) / slope);
          hi = std::min(hi, bound);
        } else if (slope < 0) {
          long s = -slope;  // t >= -rhs / s
          long bound = -rhs >= 0 ? (-rhs + s - 1) / s : -((rhs) / s);
          lo = std::max(lo, bound);
        } else if (rhs < 0) {
          return false;
        }
      }
      return lo <= hi;
    }
    for (long k = 0; k <= left; ++k) {
      bool over = false;
      for (std::size_t i = 0; i < d; ++i)
        if (used[i] + k * a[j][i] > c[i]) over = true;
      if (over) break;
      for (std::size_t i = 0; i < d; ++i) used[i] += k * a[j][i];
      bool ok = rec(j + 1, left - k);
      for (std::size_t i = 0; i < d; ++i) used[i] -= k * a[j][i];
      if (ok) return true;
    }
    return false;
  };
  return rec(0, n);
}

void requireLatticeOnly(const Semigroup& s) {
  if (s.hasGaps() || s.hasSubspace())
    throw InvalidArgument("only semigroups of the form N^d ∩ L are supported here");
}

// Minimal elements of S above the point l: they lie in [l, l + index).
std::vector<Exponent> minimalAbove(const Semigroup& s, const Exponent& l) {
  const long n = s.index().get_si();
  std::vector<Exponent> found;
  Exponent box(l.size(), static_cast<int>(n - 1));
  forEachInBox(box, [&](const Exponent& off) {
    Exponent z(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) z[i] = l[i] + off[i];
    if (s.contains(z)) found.push_back(z);
  });
  return minimalElements(found);
}

MonomialIdeal contractPoints(const Semigroup& s, const std::vector<Exponent>& lows) {
  std::vector<Exponent> all;
  for (const auto& l : minimalElements(lows))
    for (auto& z : minimalAbove(s, l)) all.push_back(z);
  return MonomialIdeal(s.dimension(), minimalElements(all));
}

}  // namespace

bool isPrime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

long primePower(long p, int e) {
  if (e < 0) throw InvalidArgument("negative level");
  long q = 1;
  for (int i = 0; i < e; ++i) {
    if (q > std::numeric_limits<long>::max() / p) throw CapExceeded("p^e does not fit in a long");
    q *= p;
  }
  return q;
}

PrimeFieldPoly::PrimeFieldPoly(long p, std::vector<std::string> variables) : p_(p), vars_(std::move(variables)) {
  requirePrime(p);
  if (p > (1L << 31)) throw InvalidArgument("characteristic too large");
}

PrimeFieldPoly PrimeFieldPoly::fromRational(long p, const MultiPoly& q) {
  PrimeFieldPoly r(p, q.variables());
  Integer pp(p);
  for (const auto& [e, c] : q.terms()) {
    Integer num = c.get_num() % pp, den = c.get_den() % pp;
    if (den == 0) throw InvalidArgument("denominator divisible by " + std::to_string(p));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
    Integer v = num * inv % pp;
    r.addTerm(e, v.get_si());
  }
  return r;
}

PrimeFieldPoly PrimeFieldPoly::monomial(long p, std::vector<std::string> variables, Exponent e, long c) {
  PrimeFieldPoly r(p, std::move(variables));
  if (e.size() != r.vars_.size()) throw InvalidArgument("exponent length differs from the variable count");
  r.addTerm(e, c);
  return r;
}

long PrimeFieldPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void PrimeFieldPoly::check(const PrimeFieldPoly& o) const {
  if (p_ != o.p_)
    throw InvalidArgument("characteristic mismatch: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
  if (vars_ != o.vars_) throw VariableMismatch(vars_, o.vars_);
}

void PrimeFieldPoly::addTerm(const Exponent& e, long c) {
  c = modp(c, p_);
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second = (it->second + c) % p_;
    if (it->second == 0) terms_.erase(it);
  }
}

PrimeFieldPoly& PrimeFieldPoly::operator+=(const PrimeFieldPoly& o) {
  check(o);
  for (const auto& [e, c] : o.terms_) addTerm(e, c);
  return *this;
}

PrimeFieldPoly& PrimeFieldPoly::operator-=(const PrimeFieldPoly& o) {
  check(o);
  for (const auto& [e, c] : o.terms_) addTerm(e, p_ - c);
  return *this;
}

PrimeFieldPoly operator*(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  a.check(b);
  PrimeFieldPoly r(a.p_, a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.addTerm(e, mulmod(ca, cb, a.p_));
    }
  return r;
}

PrimeFieldPoly PrimeFieldPoly::operator*(long c) const {
  PrimeFieldPoly r(p_, vars_);
  c = modp(c, p_);
  for (const auto& [e, v] : terms_) r.addTerm(e, mulmod(v, c, p_));
  return r;
}

PrimeFieldPoly PrimeFieldPoly::pow(unsigned n) const {
  PrimeFieldPoly r = monomial(p_, vars_, Exponent(vars_.size(), 0));
  PrimeFieldPoly base = *this;
  while (n) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

PrimeFieldPoly PrimeFieldPoly::frobenius(int e) const {
  long q = primePower(p_, e);
  PrimeFieldPoly r(p_, vars_);
  for (const auto& [ex, c] : terms_) {
    Exponent s(ex.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<int>(ex[i] * q);
    r.addTerm(s, c);
  }
  return r;
}

std::string PrimeFieldPoly::toString() const {
  MultiPoly m(vars_);
  for (const auto& [e, c] : terms_) m.addTerm(e, Rational(c));
  return m.toString() + " (mod " + std::to_string(p_) + ")";
}

PrimeFieldPoly applyCartier(const CartierMap& psi, const PrimeFieldPoly& f) {
  if (psi.p != f.characteristic())
    throw InvalidArgument("characteristic mismatch: map over " + std::to_string(psi.p) + ", polynomial over " +
                          std::to_string(f.characteristic()));
  if (psi.level < 1) throw InvalidArgument("Cartier level must be at least 1");
  const long q = psi.q();
  if (psi.twist.size() != f.variables().size()) throw InvalidArgument("twist length differs from the variable count");
  for (int u : psi.twist)
    if (u < 0 || u >= q) throw InvalidArgument("twist entries must lie in [0, p^e)");
  PrimeFieldPoly r(f.characteristic(), f.variables());
  for (const auto& [v, c] : f.terms()) {
    Exponent w(v.size());
    bool ok = true;
    for (std::size_t i = 0; i < v.size() && ok; ++i) {
      long diff = static_cast<long>(v[i]) - psi.twist[i];
      if (diff < 0 || diff % q != 0) ok = false;
      else w[i] = static_cast<int>(diff / q);
    }
    if (ok) r.addTerm(w, c);
  }
  return r;
}

Exponent cartierImageGenerator(const Exponent& w, long q) {
  Exponent r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    long up = (static_cast<long>(w[i]) + 1 + q - 1) / q;  // ceil((w_i + 1)/q)
    r[i] = static_cast<int>(std::max(0L, up - 1));
  }
  return r;
}

MonomialIdeal testIdealLevel(const MonomialIdeal& ideal, const Rational& lambda, long p, int e) {
  requirePrime(p);
  requireLambda(lambda);
  const int d = ideal.dimension();
  const long q = primePower(p, e);
  const long n = ceilTimes(lambda, q);
  if (n == 0) return MonomialIdeal::unit(d);
  if (ideal.isZero()) return MonomialIdeal::zero(d);
  const auto& gens = ideal.generators();
  // Every minimal generator is floor(w/q) for some w = sum k_j a_j <= n max_j a_j.
  Exponent box(d, 0);
  for (const auto& a : gens)
    for (int i = 0; i < d; ++i) box[i] = std::max<long>(box[i], n * a[i] / q);
  std::vector<Exponent> members;
  std::vector<long> c(d);
  forEachInBox(box, [&](const Exponent& y) {
    for (const auto& m : members)
      if (dividesExponent(m, y)) return;
    for (int i = 0; i < d; ++i) c[i] = q * (static_cast<long>(y[i]) + 1) - 1;
    if (powerBelow(gens, n, c)) members.push_back(y);
  });
  return MonomialIdeal(d, minimalElements(members));
}

TestIdealReport testIdealMonomial(const MonomialIdeal& ideal, const Rational& lambda, long p, int eMax) {
  if (eMax < 1) throw InvalidArgument("eMax must be at least 1");
  TestIdealReport rep;
  rep.p = p;
  rep.lambda = lambda;
  rep.ideal = MonomialIdeal::zero(ideal.dimension());
  for (int e = 1; e <= eMax; ++e) {
    MonomialIdeal level = testIdealLevel(ideal, lambda, p, e);
    rep.levels.push_back(level);
    MonomialIdeal next = rep.ideal + level;
    if (e > 1 && next == rep.ideal) {
      rep.stabilizedAt = e - 1;
      break;
    }
    rep.ideal = next;
  }
  return rep;
}

RestrictedCartier::RestrictedCartier(Semigroup s, CartierMap psi) : s_(std::move(s)), psi_(std::move(psi)) {
  if (s_.index() % psi_.p == 0)
    throw HypothesisViolated("p = " + std::to_string(psi_.p) + " divides the lattice index " + s_.index().get_str());
  if (static_cast<int>(psi_.twist.size()) != s_.dimension()) throw InvalidArgument("twist length differs from the dimension");
}

PrimeFieldPoly RestrictedCartier::apply(const PrimeFieldPoly& a) const {
  if (static_cast<int>(a.variables().size()) != s_.dimension())
    throw InvalidArgument("polynomial dimension differs from the semigroup");
  for (const auto& [e, c] : a.terms())
    if (!s_.contains(e)) throw HypothesisViolated("argument is not in the subring");
  PrimeFieldPoly img = applyCartier(psi_, a);
  PrimeFieldPoly r(a.characteristic(), a.variables());
  for (const auto& [e, c] : img.terms())
    if (s_.contains(e)) r.addTerm(e, c);
  return r;
}

RestrictedCartier cartierRestrict(const Semigroup& s, const CartierMap& psi) { return RestrictedCartier(s, psi); }

MonomialIdeal contractToSubring(const Semigroup& s, const MonomialIdeal& j) {
  requireLatticeOnly(s);
  if (j.dimension() != s.dimension()) throw InvalidArgument("ideal dimension differs from the semigroup");
  return contractPoints(s, j.generators());
}

MonomialIdeal summandTestIdealLevel(const Semigroup& s, const MonomialIdeal& ideal, const Rational& lambda, long p,
                                    int e) {
  requirePrime(p);
  requireLambda(lambda);
  requireLatticeOnly(s);
  const int d = s.dimension();
  if (ideal.dimension() != d) throw InvalidArgument("ideal dimension differs from the semigroup");
  for (const auto& g : ideal.generators())
    if (!s.contains(g)) throw HypothesisViolated("ideal generator " + formatVector(g) + " is not in the semigroup");
  const long q = primePower(p, e);
  const long n = ceilTimes(lambda, q);
  if (n == 0) return contractPoints(s, {Exponent(d, 0)});
  if (ideal.isZero()) return MonomialIdeal::zero(d);
  if (compositionCount(n, ideal.generators().size()) > 2e7)
    throw CapExceeded("too many generators of I^" + std::to_string(n));
  std::vector<long> m(d);
  for (int i = 0; i < d; ++i) m[i] = s.projectionGenerator(i);
  // Homogeneous Cartier maps of K[S] send x^w to x^{(w-u)/q} with u ≡ w mod qL
  // and u_i at most the residue of w_i mod q m_i; the images are generated by
  // the elements of S above l_i = m_i floor(w_i / (q m_i)).
  std::vector<Exponent> lows;
  forEachPowerExponent(ideal.generators(), n, [&](const Exponent& w) {
    Exponent l(d);
    for (int i = 0; i < d; ++i) l[i] = static_cast<int>(m[i] * (w[i] / (q * m[i])));
    lows.push_back(l);
    if (lows.size() > 4096) lows = minimalElements(lows);
  });
  return contractPoints(s, lows);
}

SummandTestIdealReport testIdealSummand(const Semigroup& s, const MonomialIdeal& ideal, const Rational& lambda, long p,
                                        int eMax) {
  requirePrime(p);
  requireLatticeOnly(s);
  if (s.index() % p == 0)
    throw HypothesisViolated("p = " + std::to_string(p) + " divides the lattice index " + s.index().get_str());
  if (eMax < 1) throw InvalidArgument("eMax must be at least 1");
  SummandTestIdealReport rep;
  rep.hypothesisHolds = s.projectionsSurjective();
  rep.intrinsic = MonomialIdeal::zero(s.dimension());
  for (int e = 1; e <= eMax; ++e) {
    MonomialIdeal next = rep.intrinsic + summandTestIdealLevel(s, ideal, lambda, p, e);
    if (e > 1 && next == rep.intrinsic) {
      rep.intrinsicStabilizedAt = e - 1;
      break;
    }
    rep.intrinsic = next;
  }
  auto r = testIdealMonomial(ideal, lambda, p, eMax);
  rep.retractionStabilizedAt = r.stabilizedAt;
  rep.retraction = contractToSubring(s, r.ideal);
  rep.agree = rep.intrinsic == rep.retraction;
  if (rep.hypothesisHolds && !rep.agree)
    throw Error("test ideal routes disagree although the summand is Cartier extensible: " +
                rep.intrinsic.toString(defaultVariableNames(s.dimension())) + " vs " +
                rep.retraction.toString(defaultVariableNames(s.dimension())));
  return rep;
}

}  // namespace bsfe
