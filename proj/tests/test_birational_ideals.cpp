#include <algorithm>
#include <random>

#include "bsfe/birational_ideals.hpp"
#include "bsfe/bs_solver.hpp"
#include "bsfe/error.hpp"
#include "bsfe/parse.hpp"
#include "bsfe/positive_char.hpp"
#include "doctest.h"

using namespace bsfe;

namespace {

MonomialIdeal M(int d, std::vector<Exponent> g) { return MonomialIdeal(d, std::move(g)); }

MonomialIdeal randomIdeal(std::mt19937& rng, int d, int maxGens, int maxDeg) {
  std::uniform_int_distribution<int> e(0, maxDeg), n(1, maxGens);
  std::vector<Exponent> gens;
  for (int k = n(rng); k > 0; --k) {
    Exponent a(d);
    for (auto& x : a) x = e(rng);
    if (std::all_of(a.begin(), a.end(), [](int x) { return x == 0; })) a[0] = 1;
    gens.push_back(a);
  }
  return M(d, gens);
}

// Direct enumeration over a generous box with the LP threshold.
MonomialIdeal bruteMultiplier(const MonomialIdeal& ideal, const Rational& lambda, bool strict) {
  const int d = ideal.dimension();
  Exponent box = ideal.maxExponents();
  int top = ceilOf(lambda + 1).get_si() * (*std::max_element(box.begin(), box.end()) + 1);
  std::vector<Exponent> members;
  forEachInBox(Exponent(d, top), [&](const Exponent& v) {
    Rational t = jumpValue(ideal, v);
    if (strict ? t > lambda : t >= lambda) members.push_back(v);
  });
  return M(d, minimalElements(members));
}

}  // namespace

TEST_CASE("threshold values") {
  auto sq = M(2, {{2, 0}, {0, 2}});
  CHECK(jumpValue(sq, {0, 0}) == 1);
  CHECK(jumpValue(sq, {1, 0}) == Rational(3, 2));
  auto line = M(1, {{1}});
  for (int k = 0; k < 5; ++k) CHECK(jumpValue(line, {k}) == k + 1);
  CHECK_THROWS_AS(jumpValue(MonomialIdeal::unit(2), {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(jumpValue(MonomialIdeal::zero(2), {0, 0}), InvalidArgument);

  NewtonPolyhedron np(sq);
  CHECK(np.contains({1, 1}));
  CHECK(np.contains({2, 0}));
  CHECK_FALSE(np.contains({1, Rational(1, 2)}));
}

TEST_CASE("facet route agrees with the linear program") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 2 + trial % 2;
    auto ideal = randomIdeal(rng, d, 4, 4);
    NewtonPolyhedron np(ideal);
    for (const auto& [w, c] : np.facets()) {
      CHECK(c > 0);
      for (const auto& a : w) CHECK(a >= 0);
    }
    forEachInBox(Exponent(d, 3), [&](const Exponent& v) {
      if (np.threshold(v) != jumpValue(ideal, v)) FAIL("threshold mismatch at " << formatVector(v));
    });
  }
}

TEST_CASE("multiplier ideals") {
  auto sq = M(2, {{2, 0}, {0, 2}});
  CHECK(multiplierMonomial(sq, 1) == M(2, {{1, 0}, {0, 1}}));
  CHECK(multiplierMonomial(sq, Rational(1, 2)) == MonomialIdeal::unit(2));
  CHECK(multiplierMonomial(M(2, {{1, 0}, {0, 1}}), 1) == MonomialIdeal::unit(2));
  CHECK(multiplierMonomial(sq, 0) == MonomialIdeal::unit(2));
  CHECK(multiplierMonomial(M(1, {{1}}), 2) == M(1, {{2}}));
  CHECK_THROWS_AS(multiplierMonomial(sq, -1), InvalidArgument);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto ideal = randomIdeal(rng, 2, 3, 3);
    Rational lambda(trial % 7 + 1, 3);
    CHECK(multiplierMonomial(ideal, lambda) == bruteMultiplier(ideal, lambda, true));
    CHECK(vfilOnRing(ideal, lambda) == bruteMultiplier(ideal, lambda, false));
  }
}

TEST_CASE("log canonical threshold and jumping numbers") {
  auto pair = M(3, {{1, 1, 0}, {1, 0, 1}});
  CHECK(lct(pair) == 1);
  auto jn = jumpingNumbers(pair, 2);
  std::vector<Rational> lowBand;
  for (const auto& x : jn)
    if (x < 2) lowBand.push_back(x);
  CHECK(lowBand == std::vector<Rational>{1});
  CHECK(lct(M(2, {{2, 0}, {0, 2}})) == 1);
  CHECK(lct(M(2, {{2, 0}, {0, 3}})) == Rational(5, 6));
  CHECK(jumpingNumbers(M(1, {{2}}), 2) == std::vector<Rational>{Rational(1, 2), 1, Rational(3, 2), 2});

  // jumping numbers are exactly where the multiplier ideal changes
  auto cusp = M(2, {{2, 0}, {0, 3}});
  auto nums = jumpingNumbers(cusp, 2);
  for (int k = 1; k < 24 * 2; ++k) {
    Rational a(k, 24);
    bool jumps = multiplierMonomial(cusp, a - Rational(1, 1000)) != multiplierMonomial(cusp, a);
    CHECK(jumps == std::binary_search(nums.begin(), nums.end(), a));
  }
}

TEST_CASE("lct from the Bernstein-Sato polynomial") {
  const std::vector<std::string> X{"x"}, XYZ{"x", "y", "z"};
  AnsatzSpec a;
  a.maxOrder = 2;
  auto r = searchFeq(X, {parsePolynomial("x^2", X)}, MultiPoly(), a);
  auto roots = factorRationalRoots(r.b).roots;
  CHECK(-roots.back().first == lct(M(1, {{2}})));

  AnsatzSpec b;
  b.maxOrder = 2;
  b.maxCoeffDegree = 1;
  b.cVectors = {{0, 1}, {1, 0}};
  b.kind = FeqKind::BmsMulti;
  auto r2 = searchFeq(XYZ, {parsePolynomial("x*y", XYZ), parsePolynomial("x*z", XYZ)}, MultiPoly(), b);
  auto roots2 = factorRationalRoots(r2.b).roots;
  CHECK(-roots2.back().first == lct(M(3, {{1, 1, 0}, {1, 0, 1}})));
}

TEST_CASE("V-filtration on the ring") {
  auto line = M(1, {{1}});
  CHECK(vfilOnRing(line, 1) == MonomialIdeal::unit(1));
  CHECK(vfilOnRing(line, 2) == M(1, {{1}}));
  CHECK(vfilOnRing(line, Rational(5, 2)) == M(1, {{2}}));
  CHECK(vfilOnRing(line, 0) == MonomialIdeal::unit(1));

  auto pair = M(3, {{1, 1, 0}, {1, 0, 1}});
  // t(v) = min(v_x + 1, v_y + v_z + 2)
  CHECK(vfilOnRing(pair, 2) == M(3, {{1, 0, 0}}));
  CHECK(vfilOnRing(pair, 3) == M(3, {{2, 1, 0}, {2, 0, 1}}));

  // union of the V^alpha with alpha > lambda is J(I^lambda)
  std::mt19937 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    auto ideal = randomIdeal(rng, 2, 3, 3);
    Rational lambda(trial % 5, 2);
    auto j = multiplierMonomial(ideal, lambda);
    CHECK(vfilOnRing(ideal, lambda + Rational(1, 1000)) == j);
  }
}

TEST_CASE("V-filtration axioms") {
  auto line = M(1, {{1}});
  std::vector<std::pair<Rational, MonomialIdeal>> onLine;
  for (int k = 0; k <= 8; ++k) onLine.emplace_back(Rational(k, 2), vfilOnRing(line, Rational(k, 2)));
  CHECK(checkVAxioms(onLine, line).allPassed());

  auto ideal = M(2, {{2, 0}, {1, 1}, {0, 3}});
  std::vector<std::pair<Rational, MonomialIdeal>> sample;
  for (int k = 0; k <= 30; ++k) {
    Rational a(k, 6);
    sample.emplace_back(a, vfilOnRing(ideal, a));
  }
  auto rep = checkVAxioms(sample, ideal);
  CHECK(rep.allPassed());
  CHECK(rep.checks.size() == 4);

  auto broken = sample;
  broken[20].second = broken[20].second * M(2, {{1, 0}});
  auto bad = checkVAxioms(broken, ideal);
  CHECK_FALSE(bad.allPassed());
  CHECK_FALSE(bad.check("decreasing").passed);

  auto shifted = sample;
  for (auto& [a, v] : shifted) v = vfilOnRing(ideal, a + Rational(1, 6));
  auto off = checkVAxioms(shifted, ideal);
  CHECK_FALSE(off.check("discreteness").passed);

  std::swap(broken[0], broken[1]);
  CHECK_THROWS_AS(checkVAxioms(broken, ideal), InvalidArgument);
}

TEST_CASE("Hodge ideal of order zero") {
  CHECK(hodgeIdealZero({1, 1}, 1) == MonomialIdeal::unit(2));
  CHECK(hodgeIdealZero({1, 1}, Rational(3, 2)) == M(2, {{1, 1}}));
  CHECK(hodgeIdealZero({1, 0, 1}, Rational(1, 2)) == MonomialIdeal::unit(3));
  CHECK_THROWS_AS(hodgeIdealZero({2, 1}, 1), HypothesisViolated);
  CHECK_THROWS_AS(hodgeIdealZero({0, 0}, 1), HypothesisViolated);
}

TEST_CASE("summand comparison") {
  Semigroup veronese(2, {{2, 0}, {0, 2}});
  auto v = summandComparisonReport(veronese, M(2, {{2, 0}, {0, 2}}), 1);
  CHECK(v.intersection == M(2, {{2, 0}, {0, 2}}));
  REQUIRE(v.intrinsic);
  CHECK(*v.intrinsic == MonomialIdeal::unit(2));
  CHECK_FALSE(*v.match);
  CHECK_FALSE(v.extensible);
  CHECK_FALSE(v.note.empty());

  Semigroup cyc(2, {{1, 1}, {0, 3}});
  auto x4y = M(2, {{4, 1}});
  auto c = summandComparisonReport(cyc, x4y, Rational(1, 8));
  CHECK(c.extensible);
  CHECK(c.intersection == MonomialIdeal::unit(2));
  CHECK(vfilSummand(cyc, x4y, 0) == MonomialIdeal::unit(2));
  CHECK(summandComparisonReport(cyc, x4y, 0).intersection == MonomialIdeal::unit(2));
  CHECK_THROWS_AS(summandComparisonReport(cyc, M(2, {{1, 0}}), 1), HypothesisViolated);
}

TEST_CASE("multiplier ideal properties") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    auto a = randomIdeal(rng, 2, 3, 3);
    auto b = randomIdeal(rng, 2, 3, 3);
    Rational l1(trial % 4 + 1, 3), l2(trial % 3 + 1, 4);
    // monotone in lambda
    CHECK(multiplierMonomial(a, l1).containsIdeal(multiplierMonomial(a, l1 + l2)));
    // subadditive: J(a^{l1+l2}) ⊆ J(a^l1) J(a^l2)
    CHECK((multiplierMonomial(a, l1) * multiplierMonomial(a, l2)).containsIdeal(multiplierMonomial(a, l1 + l2)));
    // larger ideal, larger multiplier ideal
    CHECK(multiplierMonomial(a + b, l1).containsIdeal(multiplierMonomial(a, l1)));
    // right continuity
    CHECK(multiplierMonomial(a, l1 + Rational(1, 10007)) == multiplierMonomial(a, l1));
    CHECK(lct(a * b) <= std::min(lct(a), lct(b)));
  }
}

TEST_CASE("test ideals agree with multiplier ideals for large p") {
  std::vector<std::pair<MonomialIdeal, Rational>> cases{
      {M(2, {{2, 0}, {0, 2}}), Rational(3, 4)},
      {M(2, {{2, 0}, {0, 3}}), Rational(9, 10)},
      {M(2, {{2, 0}, {1, 1}, {0, 3}}), Rational(1, 3)},
  };
  for (long p : {101L, 211L, 401L})
    for (const auto& [ideal, lambda] : cases) {
      auto jn = jumpingNumbers(ideal, 2);
      REQUIRE_FALSE(std::binary_search(jn.begin(), jn.end(), lambda));
      auto t = testIdealMonomial(ideal, lambda, p, 2);
      CHECK(t.ideal == multiplierMonomial(ideal, lambda));
    }
}
