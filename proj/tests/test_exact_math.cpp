#include <random>

#include "bsfe/error.hpp"
#include "bsfe/laurent.hpp"
#include "bsfe/linear_solve.hpp"
#include "bsfe/monomial_ideal.hpp"
#include "bsfe/multipoly.hpp"
#include "bsfe/parse.hpp"
#include "bsfe/polyhedron.hpp"
#include "doctest.h"

using namespace bsfe;

namespace {

const std::vector<std::string> XY{"x", "y"};

MultiPoly P(const std::string& s, const std::vector<std::string>& v) { return parsePolynomial(s, v); }

MultiPoly randomPoly(std::mt19937& rng, const std::vector<std::string>& vars, int maxDeg, int terms) {
  std::uniform_int_distribution<int> deg(0, maxDeg), coef(-5, 5), den(1, 3);
  MultiPoly p(vars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(vars.size());
    for (auto& x : e) x = deg(rng);
    p.addTerm(e, makeRational(coef(rng), den(rng)));
  }
  return p;
}

// Maximum of a linear objective by enumerating every basic solution of the
// constraint system (all d-subsets of rows taken as equalities).
std::optional<Rational> vertexMaximum(const PolyhedronQ& p, const RationalVector& obj) {
  const int d = p.dimension();
  const auto& rows = p.inequalities();
  std::optional<Rational> best;
  std::vector<int> pick(d);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == d) {
      RationalMatrix a;
      RationalVector b;
      for (int i : pick) {
        a.push_back(rows[i].normal);
        b.push_back(rows[i].bound);
      }
      auto sol = solveLinearExact(a, b);
      if (!sol || !sol->nullspace.empty()) return;
      if (!p.contains(sol->particular)) return;
      Rational v = 0;
      for (int i = 0; i < d; ++i) v += obj[i] * sol->particular[i];
      if (!best || v > *best) best = v;
      return;
    }
    for (int i = start; i < static_cast<int>(rows.size()); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("polynomial arithmetic examples") {
  CHECK(P("x+y", XY) + P("x-y", XY) == P("2*x", XY));
  CHECK(P("x+1", XY) * P("x-1", XY) == P("x^2-1", XY));
  std::vector<std::string> s12{"s1", "s2"};
  MultiPoly q = P("1/2592*(-66-66*s1+31*s2)", s12) * MultiPoly::constant(s12, 2592);
  CHECK(q == P("-66-66*s1+31*s2", s12));
  CHECK(q.toString() == "-66*s1 + 31*s2 - 66");
}

TEST_CASE("variable mismatch is reported with both lists") {
  MultiPoly a = P("x", {"x"});
  MultiPoly b = P("y", {"y"});
  try {
    (void)(a + b);
    FAIL("expected mismatch");
  } catch (const VariableMismatch& e) {
    CHECK(e.lhs() == std::vector<std::string>{"x"});
    CHECK(e.rhs() == std::vector<std::string>{"y"});
  }
  CHECK((a + MultiPoly::constant({}, 3)) == P("x+3", {"x"}));
}

TEST_CASE("evaluation") {
  std::vector<std::string> s{"s"};
  CHECK(P("s*(s+1)", s).evaluate({{"s", -1}}).constantTerm() == 0);
  std::vector<std::string> s12{"s1", "s2"};
  CHECK(P("(s1+s2+1)*(s1+s2+2)", s12).evaluateAt({0, 0}) == 2);
  CHECK(P("(s-1/2)*(s+1)", s).evaluateAt({makeRational(1, 2)}) == 0);
  MultiPoly partial = P("x*y + y", XY).evaluate({{"x", 2}});
  CHECK(partial.variables() == std::vector<std::string>{"y"});
  CHECK(partial == P("3*y", {"y"}));
}

TEST_CASE("canonical text and parse errors") {
  CHECK(P("y + x^2 - 1/2*x*y + 3", XY).toString() == "x^2 - 1/2*x*y + y + 3");
  CHECK(P("-(x)", XY).toString() == "-x");
  try {
    P("x +\n  * y", XY);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(P("z", XY), ParseError);
  CHECK_THROWS_AS(P("1/0", XY), ParseError);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(7);
  for (int i = 0; i < 60; ++i) {
    auto a = randomPoly(rng, XY, 3, 4), b = randomPoly(rng, XY, 3, 4), c = randomPoly(rng, XY, 3, 4);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    if (!b.isZero()) {
      auto q = (a * b).divideExact(b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
      auto [qq, r] = a.divideWithRemainder(b);
      CHECK(qq * b + r == a);
    }
  }
  CHECK_FALSE(P("x^2+1", XY).divideExact(P("x", XY)).has_value());
}

TEST_CASE("binomial polynomial") {
  std::vector<std::string> s{"s"};
  CHECK(binomialPoly(s, 0, 2) == P("1/2*s^2 - 1/2*s", s));
  CHECK(binomialPoly(s, 0, 0) == P("1", s));
  for (int t = 0; t < 6; ++t) CHECK(binomialPoly(s, 0, 3).evaluateAt({t}) == Rational(binomial(t, 3)));
}

TEST_CASE("localized elements compare by cross-multiplication") {
  auto ctx = makeLocContext({P("x", XY), P("y", XY)}, XY);
  LaurentLoc a(ctx, P("x*y*x", XY), 2);  // x^2 y / (xy)^2 = x/(xy)
  LaurentLoc b(ctx, P("x", XY), 1);
  CHECK(a == b);
  CHECK(a.reduced().denomExponent() == 1);
  LaurentLoc c(ctx, P("y", XY), 1);
  CHECK(a != c);
  CHECK((a + c) == LaurentLoc(ctx, P("x+y", XY), 1));
  CHECK((b * c) == LaurentLoc(ctx, P("1", XY), 1));
}

TEST_CASE("solveLinearExact examples") {
  auto id = solveLinearExact({{1, 0}, {0, 1}}, {3, makeRational(-1, 2)});
  REQUIRE(id);
  CHECK(id->particular == RationalVector{3, makeRational(-1, 2)});
  CHECK(id->nullspace.empty());
  auto ns = solveLinearExact({{1, 1}}, {0});
  REQUIRE(ns);
  REQUIRE(ns->nullspace.size() == 1);
  CHECK(ns->nullspace[0] == RationalVector{-1, 1});
  CHECK_FALSE(solveLinearExact({{1, 1}, {2, 2}}, {1, 3}).has_value());
}

TEST_CASE("ansatz system for c*d^2 on x^(2s+2)") {
  // Unknowns (c, b0, b1); b monic quadratic. Columns are read off from
  // d^2 x^(2s+2) = (2s+2)(2s+1) x^(2s).
  std::vector<std::string> s{"s"};
  MultiPoly image = P("(2*s+2)*(2*s+1)", s);
  auto coeffs = univariateCoefficients(image);
  RationalMatrix a = {{coeffs[0], -1, 0}, {coeffs[1], 0, -1}, {coeffs[2], 0, 0}};
  RationalVector b = {0, 0, 1};
  auto sol = solveLinearExact(a, b);
  REQUIRE(sol);
  CHECK(sol->nullspace.empty());
  Rational c = sol->particular[0];
  CHECK(c == makeRational(1, 4));
  MultiPoly bpoly = fromUnivariate(s, 0, {sol->particular[1], sol->particular[2], 1});
  CHECK(bpoly == P("(s+1)*(s+1/2)", s));
  // Oracle: substitute back and expand.
  CHECK(image * c == bpoly);
}

TEST_CASE("solver certificates on random systems") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-3, 3), dims(1, 6);
  for (int it = 0; it < 150; ++it) {
    int m = dims(rng), n = dims(rng);
    RationalMatrix a(m, RationalVector(n));
    RationalVector b(m);
    for (auto& row : a)
      for (auto& x : row) x = (v(rng) == 0 ? Rational(0) : makeRational(v(rng), 1 + (it % 3)));
    for (auto& x : b) x = v(rng);
    auto sol = solveLinearExact(a, b);
    if (!sol) continue;
    for (int i = 0; i < m; ++i) {
      Rational lhs = 0;
      for (int j = 0; j < n; ++j) lhs += a[i][j] * sol->particular[j];
      CHECK(lhs == b[i]);
      for (const auto& nv : sol->nullspace) {
        Rational z = 0;
        for (int j = 0; j < n; ++j) z += a[i][j] * nv[j];
        CHECK(z == 0);
      }
    }
    CHECK(sol->rank + static_cast<int>(sol->nullspace.size()) == n);
  }
}

TEST_CASE("polyhedron examples") {
  PolyhedronQ box(1);
  box.addInequality({1}, 0);
  box.addUpperBound({1}, 1);
  CHECK(polyhedronFeasible(box));

  PolyhedronQ empty(1);
  empty.addInequality({1}, 0, true);
  empty.addUpperBound({1}, 0, true);
  CHECK_FALSE(polyhedronFeasible(empty));

  // t(0) for <x^2, y^2>: maximize mu1 + mu2 with 2 mu_i <= 1.
  PolyhedronQ lp(2);
  lp.addNonnegativity();
  lp.addUpperBound({2, 0}, 1);
  lp.addUpperBound({0, 2}, 1);
  auto opt = maximizeLinear(lp, {1, 1});
  CHECK(opt.status == LinearOptimum::Status::Optimal);
  CHECK(opt.value == 1);
  CHECK(opt.attained);
  auto oracle = vertexMaximum(lp, {1, 1});
  REQUIRE(oracle);
  CHECK(*oracle == 1);

  PolyhedronQ open(1);
  open.addUpperBound({1}, 2, true);
  auto o2 = maximizeLinear(open, {1});
  CHECK(o2.value == 2);
  CHECK_FALSE(o2.attained);
  PolyhedronQ ray(1);
  ray.addInequality({1}, 0);
  CHECK(maximizeLinear(ray, {1}).status == LinearOptimum::Status::Unbounded);
  CHECK_THROWS_AS(maximizeLinear(ray, {1, 1}), InvalidArgument);
}

TEST_CASE("Fourier-Motzkin maximum agrees with vertex enumeration") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coef(-3, 3), dimD(1, 4), extra(0, 4), bnd(0, 6);
  int compared = 0;
  for (int it = 0; it < 200; ++it) {
    int d = dimD(rng);
    PolyhedronQ p(d);
    for (int i = 0; i < d; ++i) {
      RationalVector e(d, Rational(0));
      e[i] = 1;
      p.addInequality(e, -bnd(rng));  // keep the system bounded
      p.addUpperBound(e, bnd(rng));
    }
    int k = std::min(extra(rng), 8 - 2 * d);
    for (int j = 0; j < k; ++j) {
      RationalVector w(d);
      for (auto& x : w) x = coef(rng);
      p.addInequality(w, coef(rng));
    }
    RationalVector obj(d);
    for (auto& x : obj) x = coef(rng);
    auto fm = maximizeLinear(p, obj);
    auto vx = vertexMaximum(p, obj);
    CHECK(fm.status != LinearOptimum::Status::Unbounded);
    CHECK((fm.status == LinearOptimum::Status::Optimal) == vx.has_value());
    CHECK(polyhedronFeasible(p) == vx.has_value());
    if (vx) {
      CHECK(fm.value == *vx);
      ++compared;
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("monomial ideals") {
  MonomialIdeal i(2, {{2, 0}, {0, 2}, {3, 1}});
  CHECK(i.generators() == std::vector<Exponent>{{0, 2}, {2, 0}});
  CHECK(i.contains({1, 2}));
  CHECK_FALSE(i.contains({1, 1}));
  CHECK(i.power(2).generators().size() == 3);
  CHECK(i.toString(XY) == "<y^2, x^2>");
  CHECK((i + MonomialIdeal(2, {{1, 0}})).generators() == std::vector<Exponent>{{0, 2}, {1, 0}});
}
