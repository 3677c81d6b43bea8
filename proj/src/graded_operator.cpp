#include "bsfe/graded_operator.hpp"

#include <algorithm>
#include <set>

#include "bsfe/error.hpp"
#include "bsfe/parse.hpp"
#include "bsfe/weyl.hpp"

namespace bsfe {

GradedOperator::GradedOperator(std::vector<std::string> xVars, std::vector<GradedOperatorPiece> pieces, int declaredOrder)
    : x_(std::move(xVars)), theta_(thetaVariables(x_)), pieces_(std::move(pieces)), order_(declaredOrder) {
  for (auto& p : pieces_) {
    if (p.shift.size() != x_.size()) throw InvalidArgument("piece shift has wrong length");
    p.numerator = p.numerator.embed(theta_);
    p.denominator = p.denominator.embed(theta_);
    if (p.denominator.isZero()) throw InvalidArgument("piece denominator is zero");
  }
}

GradedOperator GradedOperator::parse(const std::vector<std::string>& xVars,
                                     const std::vector<std::tuple<std::vector<int>, std::string, std::string>>& pieces,
                                     int declaredOrder) {
  auto theta = thetaVariables(xVars);
  std::vector<GradedOperatorPiece> ps;
  for (const auto& [shift, num, den] : pieces)
    ps.push_back({shift, parsePolynomial(num, theta), parsePolynomial(den, theta)});
  return GradedOperator(xVars, std::move(ps), declaredOrder);
}

Rational GradedOperator::pieceValue(std::size_t piece, const Exponent& v) const {
  RationalVector pt(v.begin(), v.end());
  const auto& p = pieces_.at(piece);
  Rational den = p.denominator.evaluateAt(pt);
  if (den == 0) throw PoleError(v);
  return p.numerator.evaluateAt(pt) / den;
}

MultiPoly applyGraded(const GradedOperator& delta, const MultiPoly& p0, const Semigroup& s) {
  const auto& x = delta.xVariables();
  if (s.dimension() != static_cast<int>(x.size())) throw InvalidArgument("semigroup dimension differs from variables");
  MultiPoly p = p0.embed(x);
  MultiPoly out(x);
  for (const auto& [v, c] : p.terms()) {
    if (!s.contains(v)) throw InvalidArgument("monomial exponent " + formatVector(v) + " is not in the semigroup");
    for (std::size_t k = 0; k < delta.pieces().size(); ++k) {
      Rational val = delta.pieceValue(k, v);
      if (val == 0) continue;
      Exponent w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = v[i] + delta.pieces()[k].shift[i];
        if (w[i] < 0)
          throw InvalidArgument("graded operator sends " + formatVector(v) + " outside the ambient polynomial ring");
      }
      out.addTerm(w, c * val);
    }
  }
  return out;
}

std::vector<Rational> rationalRoots(const std::vector<Rational>& coefficients) {
  std::vector<Rational> c = coefficients;
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::set<Rational> roots;
  if (c.size() <= 1) return {};
  // Factor out zero roots.
  std::size_t shift = 0;
  while (c[shift] == 0) ++shift;
  if (shift > 0) roots.insert(0);
  c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  if (c.size() > 1) {
    Integer l = 1;
    for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> z;
    for (const auto& q : c) z.push_back(q.get_num() * (l / q.get_den()));
    auto divisors = [](Integer n) {
      n = abs(n);
      std::vector<Integer> out;
      if (!n.fits_slong_p() || n > 1000000000L) throw CapExceeded("coefficient too large for rational root search");
      long m = n.get_si();
      for (long d = 1; d * d <= m; ++d)
        if (m % d == 0) {
          out.emplace_back(d);
          if (d != m / d) out.emplace_back(m / d);
        }
      return out;
    };
    auto ps = divisors(z.front()), qs = divisors(z.back());
    for (const auto& pp : ps)
      for (const auto& qq : qs)
        for (int sign : {1, -1}) {
          Rational r(sign * pp, qq);
          r.canonicalize();
          Rational v = 0;
          for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * r + *it;
          if (v == 0) roots.insert(r);
        }
  }
  return {roots.begin(), roots.end()};
}

DenominatorCertificate certifyDenominators(const GradedOperator& delta, const Semigroup& s) {
  DenominatorCertificate cert;
  cert.certified = true;
  cert.method = "rational roots per coordinate";
  const int d = static_cast<int>(delta.xVariables().size());
  for (const auto& piece : delta.pieces()) {
    const MultiPoly& den = piece.denominator;
    if (den.isConstant()) continue;
    int var = -1;
    for (int i = 0; i < d; ++i) {
      if (den.degreeIn(i) <= 0) continue;
      if (var >= 0) {
        cert.certified = false;
        cert.method = "denominator depends on several coordinates; not certified";
        return cert;
      }
      var = i;
    }
    for (const auto& r : rationalRoots(univariateCoefficients(den, var))) {
      if (!isInteger(r) || r < 0) continue;
      // Is there a point of S with coordinate var equal to r? Search a box of
      // the size of the lattice index in the other coordinates.
      long rv = r.get_num().get_si();
      long span = s.index().fits_slong_p() ? s.index().get_si() : 1;
      Exponent bound(d, static_cast<int>(std::max(span, 1L)));
      bound[var] = 0;
      forEachInBox(bound, [&](const Exponent& v0) {
        Exponent v = v0;
        v[var] = static_cast<int>(rv);
        if (s.contains(v) && std::find(cert.poles.begin(), cert.poles.end(), v) == cert.poles.end())
          cert.poles.push_back(v);
      });
    }
  }
  if (!cert.poles.empty()) cert.certified = false;
  return cert;
}

}  // namespace bsfe
