#include <random>

#include "bsfe/error.hpp"
#include "bsfe/parse.hpp"
#include "bsfe/toric_summand.hpp"
#include "doctest.h"

using namespace bsfe;

namespace {

const std::vector<std::string> XY{"x", "y"};

MultiPoly P(const std::string& s, const std::vector<std::string>& v = XY) { return parsePolynomial(s, v); }

// K[xy, x^3, y^3]: exponents with a ≡ b mod 3.
Semigroup cyclic3() { return Semigroup(2, {{1, 1}, {0, 3}}); }
Semigroup veronese() { return Semigroup(2, {{2, 0}, {0, 2}}); }

MultiPoly randomPoly(std::mt19937& rng, const std::vector<std::string>& vars, int maxDeg, int terms) {
  std::uniform_int_distribution<int> e(0, maxDeg), c(-4, 4);
  MultiPoly p(vars);
  for (int k = 0; k < terms; ++k) {
    Exponent x(vars.size(), 0);
    x[0] = e(rng);
    x[1] = std::uniform_int_distribution<int>(0, maxDeg - x[0])(rng);
    p.addTerm(x, c(rng));
  }
  return p;
}

MultiPoly randomInA(std::mt19937& rng, const Semigroup& s, int maxDeg, int terms) {
  return splitBeta(s, randomPoly(rng, XY, maxDeg, 4 * terms));
}

}  // namespace

TEST_CASE("semigroup membership") {
  auto s = cyclic3();
  CHECK(s.contains({4, 1}));
  CHECK_FALSE(s.contains({1, 0}));
  CHECK(veronese().contains({2, 2}));
  CHECK_FALSE(veronese().contains({1, 2}));
  CHECK_THROWS_AS(s.contains({1, 1, 1}), InvalidArgument);
}

TEST_CASE("splitting beta") {
  auto s = cyclic3();
  CHECK(splitBeta(s, P("x^2*y^2 + x^2*y")) == P("x^2*y^2"));
  MultiPoly a = P("x^4*y - 3*x^3 + y^6 + 2");
  CHECK(splitBeta(s, a) == a);
  CHECK(splitBeta(veronese(), P("x + y")).isZero());
  CHECK_NOTHROW(SummandElement(s, a));
  CHECK_THROWS_AS(SummandElement(s, P("x")), HypothesisViolated);
  // Extra variables after the ambient ones are carried along.
  std::vector<std::string> xys{"x", "y", "s"};
  CHECK(splitBeta(s, P("s*x*y + s^2*x", xys)) == P("s*x*y", xys));
}

TEST_CASE("theta splitting") {
  auto s = cyclic3();
  auto ctx = makeFsContext(XY, {P("x^4*y")});
  std::vector<std::string> xys{"x", "y", "s"};
  FsElement v(ctx, P("x^2*y^2 + x^2*y", xys));
  CHECK(thetaSplit(s, v) == FsElement(ctx, P("x^2*y^2", xys)));
  FsElement inA(ctx, P("s*x^3 + x*y", xys), 2);
  CHECK(thetaSplit(s, inA) == inA);
  CHECK(thetaSplit(s, FsElement(ctx, MultiPoly(xys))).isZero());
  CHECK_THROWS_AS(thetaSplit(s, FsElement(makeFsContext(XY, {P("x")}), P("1"))), HypothesisViolated);
}

TEST_CASE("operator restriction") {
  auto s = cyclic3();
  WeylOp d = parseWeylOp("1/256*d_x^4*d_y", XY);
  auto r = restrictOperator(s, d);
  for (const char* m : {"x^4*y", "x^8*y^2", "x^7*y^4"}) {
    MultiPoly img = applyWeyl(d, P(m));
    CHECK(inSubring(s, img));
    CHECK(r.apply(P(m)) == img);
  }
  CHECK(restrictOperator(s, parseWeylOp("d_x", XY)).apply(P("x^3")).isZero());
  MultiPoly a = P("x*y + y^3");
  CHECK(restrictOperator(s, parseWeylOp("1", XY)).apply(a) == a);
}

TEST_CASE("preservation of the subring") {
  auto s = cyclic3();
  auto r = checkPreservesSubring(s, parseWeylOp("d_x^4*d_y", XY), 30);
  CHECK(r.preserved);
  CHECK(r.exact);
  auto bad = checkPreservesSubring(s, parseWeylOp("d_x", XY), 30);
  CHECK_FALSE(bad.preserved);
  REQUIRE(bad.counterexample);
  CHECK(*bad.counterexample == Exponent{1, 1});
  CHECK(*bad.image == P("y"));
  // x^3 is also sent outside A.
  CHECK_FALSE(inSubring(s, applyWeyl(parseWeylOp("d_x", XY), P("x^3"))));
  CHECK(checkPreservesSubring(s, parseWeylOp("x^3", XY), 30).preserved);
  CHECK_THROWS_AS(checkPreservesSubring(s, parseWeylOp("x^3", XY), 2), InvalidArgument);

  auto v = veronese();
  CHECK(checkPreservesSubring(v, parseWeylOp("d_x^2", XY), 10).preserved);
  CHECK(checkPreservesSubring(v, parseWeylOp("x*d_x + y*d_y", XY), 10).preserved);
  auto vb = checkPreservesSubring(v, parseWeylOp("d_x*d_y", XY), 10);
  CHECK_FALSE(vb.preserved);
  CHECK(*vb.counterexample == Exponent{2, 2});
  // Vanishing only far away: the counterexample lies beyond the bound.
  auto far = checkPreservesSubring(s, parseWeylOp("(x-7)*(x-8)*d_x", XY), 3);
  CHECK_FALSE(far.preserved);
  CHECK(far.exact);

  // With gaps only the bounded check is available.
  Semigroup cusp(1, {{1}}, {}, {{1}});
  auto c = checkPreservesSubring(cusp, parseWeylOp("x*d_x", {"x"}), 12);
  CHECK(c.preserved);
  CHECK_FALSE(c.exact);
  auto cb = checkPreservesSubring(cusp, parseWeylOp("d_x", {"x"}), 12);
  CHECK_FALSE(cb.preserved);
  CHECK(*cb.counterexample == Exponent{2});
}

TEST_CASE("exact preservation agrees with restriction on low degrees") {
  std::vector<WeylOp> ops = {parseWeylOp("d_x^4*d_y", XY), parseWeylOp("x^2*y^2*d_x^3*d_y^3", XY),
                             parseWeylOp("y^2*d_x", XY), parseWeylOp("d_x^2", XY), parseWeylOp("x*d_y^2", XY)};
  for (const auto& s : {cyclic3(), veronese()}) {
    for (const auto& d : ops) {
      auto rep = checkPreservesSubring(s, d, 12);
      REQUIRE(rep.exact);
      auto r = restrictOperator(s, d);
      bool agree = true;
      for (int a = 0; a <= 12; ++a)
        for (int b = 0; a + b <= 12; ++b) {
          if (!s.contains({a, b})) continue;
          MultiPoly m = MultiPoly::monomial(XY, {a, b});
          if (r.apply(m) != applyWeyl(d, m)) agree = false;
        }
      CHECK(agree == rep.preserved);
    }
  }
}

TEST_CASE("diagonal groups") {
  DiagonalGroup g{{{1, -1}}, {3}};
  auto s = diagonalGroupToLattice(g);
  CHECK(s.index() == 3);
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; a + b <= 10; ++b) CHECK(s.contains({a, b}) == ((a - b) % 3 == 0));
  CHECK(fixesHyperplaneCheck(g).passes);
  CHECK_THROWS_AS(diagonalGroupToLattice(DiagonalGroup{{}, {}}), InvalidArgument);
  DiagonalGroup trivial{{{0, 0}}, {1}};
  CHECK(diagonalGroupToLattice(trivial).isFull());
  DiagonalGroup refl{{{1, 0}}, {2}};
  auto h = fixesHyperplaneCheck(refl);
  CHECK_FALSE(h.passes);
  REQUIRE(h.offendingPowers);
  CHECK(*h.offendingPowers == IntVector{1});
}

TEST_CASE("group invariants match lattice membership") {
  std::vector<DiagonalGroup> groups = {
      {{{1, -1}}, {3}}, {{{1, 1}}, {2}}, {{{1, 2, 3}}, {5}}, {{{1, 0, 1}, {0, 1, 1}}, {2, 2}}, {{{1, 3}}, {4}}};
  for (const auto& g : groups) {
    auto s = diagonalGroupToLattice(g);
    int d = g.dimension();
    bool ok = true;
    forEachInBox(std::vector<int>(d, 10), [&](const Exponent& v) {
      int deg = 0;
      for (int a : v) deg += a;
      if (deg <= 10 && isInvariantMonomial(g, v) != s.contains(v)) ok = false;
    });
    CHECK(ok);
  }
}

TEST_CASE("coordinate projections of shipped lattices are onto") {
  for (const auto& s : {cyclic3(), diagonalGroupToLattice({{{1, 2, 3}}, {5}})}) {
    CHECK(s.projectionsSurjective());
    for (int i = 0; i < s.dimension(); ++i) {
      auto w = s.unitCoordinateWitness(i);
      REQUIRE(w);
      CHECK((*w)[i] == 1);
      CHECK(s.inLattice(*w));
    }
  }
  CHECK_FALSE(veronese().projectionsSurjective());
  CHECK_FALSE(veronese().unitCoordinateWitness(0));
}

TEST_CASE("splitting is idempotent and A-linear") {
  std::mt19937 rng(7);
  for (const auto& s : {cyclic3(), veronese()}) {
    for (int it = 0; it < 100; ++it) {
      MultiPoly a = randomInA(rng, s, 8, 3);
      MultiPoly p = randomPoly(rng, XY, 8, 6);
      MultiPoly bp = splitBeta(s, p);
      CHECK(splitBeta(s, bp) == bp);
      CHECK(splitBeta(s, a * p) == a * bp);
    }
  }
}

TEST_CASE("theta splitting restricts to the identity") {
  std::mt19937 rng(8);
  auto s = cyclic3();
  auto ctx = makeFsContext(XY, {P("x^4*y"), P("x*y + y^3")}, {"s1", "s2"});
  for (int it = 0; it < 30; ++it) {
    MultiPoly a = randomInA(rng, s, 8, 3).embed(ctx->variables());
    a *= P(it % 2 ? "s1 + 1" : "s2^2", ctx->variables());
    FsElement v(ctx, a, it % 3);
    CHECK(thetaSplit(s, v) == v);
  }
}

TEST_CASE("differential summand identity") {
  auto s = cyclic3();
  std::vector<std::string> xys{"x", "y", "s"};
  auto ctx = makeFsContext(XY, {P("x^4*y")});
  std::vector<FsElement> samples = {FsElement(ctx, P("1", xys)), FsElement(ctx, P("x^4*y", xys)),
                                    FsElement(ctx, P("s*x*y + y^3", xys), 1)};
  WeylOp d = parseWeylOp("1/256*d_x^4*d_y", XY);
  auto r = checkDifferentialSummandIdentity(s, d, samples);
  CHECK(r.holds);
  for (const auto& v : samples) CHECK(thetaSplit(s, fsApply(d, v)) == fsApply(d, v));

  auto c3 = makeFsContext(XY, {P("x^3")});
  FsElement v(c3, P("x^3", xys));
  WeylOp dx = parseWeylOp("d_x", XY);
  CHECK(fsApply(dx, v) == FsElement(c3, P("(3 + 3*s)*x^2", xys)));
  CHECK(thetaSplit(s, fsApply(dx, v)).isZero());
  CHECK(checkDifferentialSummandIdentity(s, dx, {v}).holds);
  CHECK(checkDifferentialSummandIdentity(s, WeylOp(XY, {}), {v}).holds);
  CHECK_THROWS_AS(checkDifferentialSummandIdentity(s, dx, {FsElement(c3, P("x", xys))}), HypothesisViolated);
}

TEST_CASE("differential summand identity on random operators") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> e(0, 2), c(-3, 3);
  for (const auto& s : {cyclic3(), veronese()}) {
    auto ctx = makeFsContext(XY, {P("x^6"), P("x^2*y^2 + y^6")}, {"s1", "s2"});
    for (int it = 0; it < 8; ++it) {
      WeylOp d(XY, {"s1"});
      for (int k = 0; k < 3; ++k) d += WeylOp::term(XY, {"s1"}, {e(rng), e(rng)}, {e(rng), e(rng) % 2}, {e(rng) % 2}, c(rng));
      MultiPoly a = randomInA(rng, s, 6, 2).embed(ctx->variables()) * P("s2 + 2", ctx->variables());
      CHECK(checkDifferentialSummandIdentity(s, d, {FsElement(ctx, a, it % 2)}).holds);
    }
  }
}

TEST_CASE("semigroup files") {
  auto j = nlohmann::json::parse(R"({"dimension": 2, "group": {"weights": [[1, -1]], "orders": [3]}})");
  auto s = semigroupFromJson(j);
  CHECK(s.index() == 3);
  CHECK(s.contains({4, 1}));
  auto back = semigroupFromJson(semigroupToJson(s));
  CHECK(back.latticeBasis() == s.latticeBasis());
  auto sub = semigroupFromJson(nlohmann::json::parse(R"({"dimension": 2, "equations": [["1", "-1/1"]]})"));
  CHECK(sub.contains({3, 3}));
  CHECK_FALSE(sub.contains({3, 2}));
  auto gaps = semigroupFromJson(nlohmann::json::parse(R"({"dimension": 1, "gaps": [[1]]})"));
  CHECK_FALSE(gaps.contains({1}));
  CHECK(gaps.contains({3}));
  CHECK_THROWS_AS(semigroupFromJson(nlohmann::json::parse(R"({"dimension": 2, "basis": []})")), InvalidArgument);
  CHECK_THROWS_AS(semigroupFromJson(nlohmann::json::parse(R"({"dimension": 2, "lattice": [[1, 0]]})")),
                  InvalidArgument);
}
