#include <map>
#include <random>

#include "bsfe/error.hpp"
#include "bsfe/parse.hpp"
#include "bsfe/positive_char.hpp"
#include "doctest.h"

using namespace bsfe;

namespace {

const std::vector<std::string> X{"x"};
const std::vector<std::string> XY{"x", "y"};

PrimeFieldPoly FP(long p, const std::string& s, const std::vector<std::string>& v) {
  return PrimeFieldPoly::fromRational(p, parsePolynomial(s, v));
}

PrimeFieldPoly randomPoly(std::mt19937& rng, long p, const std::vector<std::string>& vars, int maxDeg) {
  std::uniform_int_distribution<int> e(0, maxDeg), c(0, static_cast<int>(p - 1)), n(1, 5);
  PrimeFieldPoly f(p, vars);
  for (int k = n(rng); k > 0; --k) {
    Exponent x(vars.size());
    for (auto& a : x) a = e(rng);
    f.addTerm(x, c(rng));
  }
  return f;
}

// Images of x^{w+m} under every twist, for generators w of I^N and multiples
// m with |m| <= R; R shrinks for large instances.
MonomialIdeal bruteLevel(const MonomialIdeal& ideal, const Rational& lambda, long p, int e) {
  const int d = ideal.dimension();
  const long q = primePower(p, e);
  long n = ceilOf(lambda * Rational(q)).get_si();
  MonomialIdeal pw = n == 0 ? MonomialIdeal::unit(d) : ideal.power(static_cast<int>(n));
  std::vector<std::string> vars;
  for (int i = 0; i < d; ++i) vars.push_back("x" + std::to_string(i));
  long radius = 2 * q;
  auto boxCount = [&](long r) {
    double c = 1;
    for (int i = 1; i <= d; ++i) c = c * static_cast<double>(r + i) / i;
    return c * static_cast<double>(pw.generators().size());
  };
  while (radius > 2 && boxCount(radius) > 3e5) radius /= 2;
  std::vector<Exponent> images;
  for (const auto& w : pw.generators()) {
    forEachInBox(Exponent(d, static_cast<int>(radius)), [&](const Exponent& m) {
      long size = 0;
      for (int a : m) size += a;
      if (size > radius) return;
      Exponent v(d), u(d);
      for (int i = 0; i < d; ++i) {
        v[i] = w[i] + m[i];
        u[i] = static_cast<int>(v[i] % q);
      }
      CartierMap psi{p, e, u};
      auto img = applyCartier(psi, PrimeFieldPoly::monomial(p, vars, v));
      if (img.terms().size() != 1) FAIL("matching twist must keep the monomial");
      images.push_back(img.terms().begin()->first);
      // A different twist kills the monomial.
      Exponent other = u;
      other[0] = static_cast<int>((other[0] + 1) % q);
      if (size == 0) CHECK(applyCartier(CartierMap{p, e, other}, PrimeFieldPoly::monomial(p, vars, v)).isZero());
    });
  }
  return MonomialIdeal(d, minimalElements(images));
}

MonomialIdeal closedFormLevel(const MonomialIdeal& ideal, const Rational& lambda, long p, int e) {
  const long q = primePower(p, e);
  long n = ceilOf(lambda * Rational(q)).get_si();
  MonomialIdeal pw = n == 0 ? MonomialIdeal::unit(ideal.dimension()) : ideal.power(static_cast<int>(n));
  std::vector<Exponent> gens;
  for (const auto& w : pw.generators()) gens.push_back(cartierImageGenerator(w, q));
  return MonomialIdeal(ideal.dimension(), gens);
}

// Homogeneous Cartier maps of K[S] found by search: twists u ∈ L ∩ [0, q m_i)
// whose class elements (inside a box) all dominate u.
MonomialIdeal bruteSummandLevel(const Semigroup& s, const MonomialIdeal& ideal, const Rational& lambda, long p, int e) {
  const int d = s.dimension();
  const long q = primePower(p, e);
  long n = ceilOf(lambda * Rational(q)).get_si();
  MonomialIdeal pw = ideal.power(static_cast<int>(n));
  long mMax = 1;
  for (int i = 0; i < d; ++i) mMax = std::max(mMax, s.projectionGenerator(i));
  auto inQL = [&](const Exponent& diff) {
    IntVector v(d);
    for (int i = 0; i < d; ++i) {
      if (diff[i] % q != 0) return false;
      v[i] = diff[i] / q;
    }
    return s.inLattice(v);
  };
  std::vector<Exponent> twists;
  forEachInBox(Exponent(d, static_cast<int>(q * mMax - 1)), [&](const Exponent& u) {
    IntVector uv(u.begin(), u.end());
    if (!s.inLattice(uv)) return;
    for (int i = 0; i < d; ++i)
      if (u[i] >= q * s.projectionGenerator(i)) return;
    bool valid = true;
    forEachInBox(Exponent(d, static_cast<int>(2 * q * mMax)), [&](const Exponent& v) {
      if (!valid) return;
      for (int i = 0; i < d; ++i)
        if ((v[i] - u[i]) % q != 0) return;
      if (!s.contains(v)) return;
      Exponent diff(d);
      for (int i = 0; i < d; ++i) diff[i] = v[i] - u[i];
      if (inQL(diff) && !dividesExponent(u, v)) valid = false;
    });
    if (valid) twists.push_back(u);
  });
  std::map<Exponent, std::vector<Exponent>> byResidue;
  for (const auto& u : twists) {
    Exponent r(d);
    for (int i = 0; i < d; ++i) r[i] = static_cast<int>(u[i] % q);
    byResidue[r].push_back(u);
  }
  std::vector<Exponent> images;
  for (const auto& w : pw.generators())
    forEachInBox(Exponent(d, static_cast<int>(3 * q * mMax)), [&](const Exponent& m) {
      if (!s.contains(m)) return;
      Exponent v(d), r(d);
      for (int i = 0; i < d; ++i) {
        v[i] = w[i] + m[i];
        r[i] = static_cast<int>(v[i] % q);
      }
      auto it = byResidue.find(r);
      if (it == byResidue.end()) return;
      for (const auto& u : it->second) {
        Exponent diff(d);
        for (int i = 0; i < d; ++i) diff[i] = v[i] - u[i];
        if (!dividesExponent(u, v) || !inQL(diff)) continue;
        Exponent img(d);
        for (int i = 0; i < d; ++i) img[i] = static_cast<int>(diff[i] / q);
        images.push_back(img);
      }
    });
  return MonomialIdeal(d, minimalElements(images));
}

MonomialIdeal randomIdeal(std::mt19937& rng, int d) {
  std::uniform_int_distribution<int> count(1, 3), deg(1, 6);
  std::vector<Exponent> gens;
  for (int k = count(rng); k > 0; --k) {
    int total = deg(rng);
    Exponent g(d, 0);
    for (int t = 0; t < total; ++t) g[std::uniform_int_distribution<int>(0, d - 1)(rng)]++;
    gens.push_back(g);
  }
  return MonomialIdeal(d, gens);
}

}  // namespace

TEST_CASE("prime field polynomials") {
  auto f = FP(5, "3*x^2 + 7*x - 1/2", X);
  CHECK(f.coefficient({2}) == 3);
  CHECK(f.coefficient({1}) == 2);
  CHECK(f.coefficient({0}) == 2);  // -1/2 = -3 = 2 mod 5
  CHECK((f - f).isZero());
  CHECK(FP(3, "x + 1", X).pow(3) == FP(3, "x^3 + 1", X));
  CHECK(FP(3, "x + y", XY).frobenius(2) == FP(3, "x + y", XY).pow(9));
  CHECK_THROWS_AS(FP(5, "1/5*x", X), InvalidArgument);
  CHECK_THROWS_AS(PrimeFieldPoly(6, X), InvalidArgument);
  CHECK_THROWS_AS(FP(3, "x", X) + FP(5, "x", X), InvalidArgument);
}

TEST_CASE("Cartier map examples") {
  CartierMap psi{3, 1, {2}};
  CHECK(applyCartier(psi, FP(3, "x^5", X)) == FP(3, "x", X));
  for (int k = 0; k < 4; ++k) {
    CartierMap id{5, 2, {0}};
    CHECK(applyCartier(id, PrimeFieldPoly::monomial(5, X, {25 * k})) == PrimeFieldPoly::monomial(5, X, {k}));
  }
  CHECK(applyCartier(CartierMap{5, 1, {3, 1}}, FP(5, "x^2*y^7", XY)).isZero());
  CHECK_THROWS_AS(applyCartier(CartierMap{5, 1, {0}}, FP(3, "x", X)), InvalidArgument);
  CHECK_THROWS_AS(applyCartier(CartierMap{3, 1, {3}}, FP(3, "x", X)), InvalidArgument);
}

TEST_CASE("Cartier maps are p^-e linear") {
  std::mt19937 rng(5);
  for (long p : {3L, 5L, 7L}) {
    for (int it = 0; it < 200; ++it) {
      int e = p == 3 && it % 2 ? 2 : 1;
      long q = primePower(p, e);
      auto r = randomPoly(rng, p, XY, 3);
      auto f = randomPoly(rng, p, XY, static_cast<int>(2 * q));
      std::uniform_int_distribution<int> tw(0, static_cast<int>(q - 1));
      CartierMap psi{p, e, {tw(rng), tw(rng)}};
      CHECK(applyCartier(psi, r.pow(static_cast<unsigned>(q)) * f) == r * applyCartier(psi, f));
      // Shift law and reconstruction from all twists.
      CHECK(applyCartier(psi, PrimeFieldPoly::monomial(p, XY, {static_cast<int>(q), 0}) * f) ==
            PrimeFieldPoly::monomial(p, XY, {1, 0}) * applyCartier(psi, f));
      if (it % 20 == 0) {
        PrimeFieldPoly sum(p, XY);
        forEachInBox(Exponent{static_cast<int>(q - 1), static_cast<int>(q - 1)}, [&](const Exponent& u) {
          sum += PrimeFieldPoly::monomial(p, XY, u) * applyCartier(CartierMap{p, e, u}, f).frobenius(e);
        });
        CHECK(sum == f);
      }
    }
  }
}

TEST_CASE("test ideal examples") {
  MonomialIdeal squares(2, {{2, 0}, {0, 2}});
  MonomialIdeal maximal(2, {{1, 0}, {0, 1}});
  for (long p : {3L, 5L, 7L}) {
    auto r = testIdealMonomial(squares, 1, p);
    CHECK(r.ideal == maximal);
    CHECK(r.stabilized());
    for (int e = 1; e <= 3; ++e) CHECK(testIdealLevel(squares, 1, p, e) == bruteLevel(squares, 1, p, e));
  }
  MonomialIdeal x(1, {{1}});
  CHECK(testIdealMonomial(x, makeRational(1, 2), 5).ideal.isUnit());
  CHECK(testIdealMonomial(x, 1, 5).ideal == x);
  CHECK(testIdealMonomial(x, 0, 5).ideal.isUnit());
  CHECK_THROWS_AS(testIdealMonomial(x, 1, 4), InvalidArgument);
  // x^3 at 0.3: the first level is still too small.
  auto r = testIdealMonomial(MonomialIdeal(1, {{3}}), makeRational(3, 10), 5);
  CHECK(r.levels.at(0) == x);
  CHECK(r.ideal.isUnit());
  CHECK(*r.stabilizedAt == 2);
  auto capped = testIdealMonomial(MonomialIdeal(1, {{3}}), makeRational(3, 10), 5, 1);
  CHECK_FALSE(capped.stabilized());
}

TEST_CASE("closed form agrees with brute force") {
  std::mt19937 rng(11);
  const std::vector<Rational> lambdas{makeRational(1, 3), makeRational(1, 2), makeRational(3, 4), 1};
  for (long p : {3L, 5L, 7L})
    for (int e : {1, 2})
      for (int it = 0; it < 20; ++it) {
        int d = 1 + it % 3;
        auto ideal = randomIdeal(rng, d);
        Rational lambda = lambdas[it % lambdas.size()];
        auto closed = closedFormLevel(ideal, lambda, p, e);
        CHECK(closed == bruteLevel(ideal, lambda, p, e));
        CHECK(closed == testIdealLevel(ideal, lambda, p, e));
      }
}

TEST_CASE("test ideals are monotone in lambda") {
  std::mt19937 rng(12);
  const std::vector<Rational> lambdas{0, makeRational(1, 4), makeRational(1, 2), makeRational(2, 3), 1,
                                      makeRational(3, 2), 2};
  for (int it = 0; it < 15; ++it) {
    auto ideal = randomIdeal(rng, 1 + it % 3);
    for (long p : {3L, 5L}) {
      std::vector<MonomialIdeal> taus;
      for (const auto& l : lambdas) taus.push_back(testIdealMonomial(ideal, l, p, 3).ideal);
      CHECK(taus.front().isUnit());
      for (std::size_t k = 1; k < taus.size(); ++k) CHECK(taus[k - 1].containsIdeal(taus[k]));
    }
  }
}

TEST_CASE("Cartier maps on a summand") {
  Semigroup s(2, {{1, 1}, {0, 3}});
  auto r = cartierRestrict(s, CartierMap{5, 1, {0, 0}});
  CHECK(r.apply(FP(5, "x^5*y^5", XY)) == FP(5, "x*y", XY));
  auto a = FP(5, "x^15 + 2*x^5*y^5", XY);
  CHECK(r.apply(a) == applyCartier(r.map(), a));
  CHECK(cartierRestrict(s, CartierMap{5, 1, {1, 0}}).apply(FP(5, "x^6*y^3", XY)).isZero());
  CHECK_THROWS_AS(cartierRestrict(s, CartierMap{3, 1, {0, 0}}), HypothesisViolated);
  CHECK_THROWS_AS(r.apply(FP(5, "x", XY)), HypothesisViolated);
}

TEST_CASE("test ideals of summands") {
  Semigroup veronese(2, {{2, 0}, {0, 2}});
  MonomialIdeal squares(2, {{2, 0}, {0, 2}});
  auto v = testIdealSummand(veronese, squares, 1, 5);
  CHECK(v.intrinsic == MonomialIdeal::unit(2));
  CHECK(v.retraction == squares);
  CHECK_FALSE(v.agree);
  CHECK_FALSE(v.hypothesisHolds);
  CHECK(summandTestIdealLevel(veronese, squares, 1, 5, 1) == bruteSummandLevel(veronese, squares, 1, 5, 1));

  Semigroup cyc(2, {{1, 1}, {0, 3}});
  MonomialIdeal x4y(2, {{4, 1}});
  auto c = testIdealSummand(cyc, x4y, makeRational(1, 4), 7);
  CHECK(c.agree);
  CHECK(c.hypothesisHolds);
  CHECK(c.intrinsic == MonomialIdeal(2, {{1, 1}, {3, 0}}));
  for (int e : {1, 2}) {
    auto fast = summandTestIdealLevel(cyc, x4y, makeRational(1, 4), 7, e);
    auto brute = bruteSummandLevel(cyc, x4y, makeRational(1, 4), 7, e);
    CHECK_MESSAGE(fast == brute, fast.toString(XY), " vs ", brute.toString(XY));
  }
  auto unit = testIdealSummand(cyc, MonomialIdeal::unit(2), 1, 7);
  CHECK(unit.intrinsic == MonomialIdeal::unit(2));
  CHECK(unit.retraction == MonomialIdeal::unit(2));
  CHECK_THROWS_AS(testIdealSummand(cyc, x4y, 1, 3), HypothesisViolated);
  CHECK_THROWS_AS(testIdealSummand(cyc, MonomialIdeal(2, {{1, 0}}), 1, 7), HypothesisViolated);
}

TEST_CASE("contraction to a subring") {
  Semigroup cyc(2, {{1, 1}, {0, 3}});
  CHECK(contractToSubring(cyc, MonomialIdeal(2, {{1, 0}})) == MonomialIdeal(2, {{1, 1}, {3, 0}}));
  CHECK(contractToSubring(cyc, MonomialIdeal::unit(2)).isUnit());
  CHECK_THROWS_AS(contractToSubring(Semigroup(1, {{1}}, {}, {{1}}), MonomialIdeal(1, {{1}})), InvalidArgument);
}
