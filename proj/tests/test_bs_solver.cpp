#include <chrono>

#include "bsfe/bs_solver.hpp"
#include "bsfe/error.hpp"
#include "bsfe/parse.hpp"
#include "doctest.h"

using namespace bsfe;

namespace {

const std::vector<std::string> X{"x"};
const std::vector<std::string> XYZ{"x", "y", "z"};

MultiPoly P(const std::string& s, const std::vector<std::string>& v) { return parsePolynomial(s, v); }
MultiPoly B(const std::string& s) { return parsePolynomial(s, {"s"}); }

void checkCertificate(const BsResult& r, const std::vector<std::string>& x, const std::vector<MultiPoly>& f) {
  CHECK(r.certificate.verified);
  CHECK(verifyFeqFormal(r.witness, makeFsContext(x, f)).verified);
  CHECK(r.b.leadingCoefficient() == 1);
  CHECK(r.minimalWithinBounds);
  CHECK(static_cast<int>(r.infeasibleDegrees.size()) == r.b.totalDegree());
}

}  // namespace

TEST_CASE("searchFeq on one variable") {
  AnsatzSpec a;
  a.maxOrder = 1;
  auto r = searchFeq(X, {P("x", X)}, MultiPoly(), a);
  CHECK(r.b == B("s+1"));
  CHECK(r.witness.terms.at(0).op == parseWeylOp("d_x", X, {"s"}));
  checkCertificate(r, X, {P("x", X)});

  a.maxOrder = 2;
  auto r2 = searchFeq(X, {P("x^2", X)}, MultiPoly(), a);
  CHECK(r2.b == B("(s+1)*(s+1/2)"));
  CHECK(r2.witness.terms.at(0).op == parseWeylOp("1/4*d_x^2", X, {"s"}));
  CHECK(r2.infeasibleDegrees == std::vector<int>{0, 1});
  checkCertificate(r2, X, {P("x^2", X)});
}

TEST_CASE("searchFeq for the pair (xy, xz)") {
  AnsatzSpec a;
  a.kind = FeqKind::BmsMulti;
  a.maxOrder = 2;
  std::vector<MultiPoly> f{P("x*y", XYZ), P("x*z", XYZ)};
  auto r = searchFeq(XYZ, f, MultiPoly(), a);
  CHECK(r.b == B("(s+1)*(s+2)"));
  checkCertificate(r, XYZ, f);
}

TEST_CASE("grading filter does not change the answer") {
  AnsatzSpec a;
  a.maxOrder = 2;
  a.maxCoeffDegree = 1;
  a.maxSDegree = 1;
  auto with = searchFeq(X, {P("x^2", X)}, MultiPoly(), a);
  a.gradingFilter = false;
  auto without = searchFeq(X, {P("x^2", X)}, MultiPoly(), a);
  CHECK(with.b == without.b);
  CHECK(with.unknowns < without.unknowns);
  auto nonMonomial = searchFeq(X, {P("x^2 + x", X)}, MultiPoly(), a);
  CHECK(nonMonomial.b == B("s+1"));
  checkCertificate(nonMonomial, X, {P("x^2 + x", X)});
}

TEST_CASE("relative equations") {
  AnsatzSpec a;
  a.maxOrder = 1;
  auto r = searchFeq(X, {P("x", X)}, P("x", X), a);
  CHECK(r.b == B("s+2"));
  CHECK((r.witness.kind == FeqKind::Relative));
  CHECK(r.certificate.verified);
}

TEST_CASE("b is invariant under rescaling f") {
  for (const char* lam : {"2", "-1/3"}) {
    AnsatzSpec a;
    a.maxOrder = 2;
    auto r = searchFeq(X, {P(std::string(lam) + "*x^2", X)}, MultiPoly(), a);
    CHECK(r.b == B("(s+1)*(s+1/2)"));
    a.kind = FeqKind::BmsMulti;
    std::vector<MultiPoly> f{P(std::string(lam) + "*x*y", XYZ), P("x*z", XYZ)};
    auto r2 = searchFeq(XYZ, f, MultiPoly(), a);
    CHECK(r2.b == B("(s+1)*(s+2)"));
    checkCertificate(r2, XYZ, f);
  }
}

TEST_CASE("searches that fail within bounds") {
  AnsatzSpec a;
  a.maxOrder = 1;
  CHECK_THROWS_AS(searchFeq(X, {P("x^2", X)}, MultiPoly(), a), NotFoundWithinBounds);
  a.maxOrder = 2;
  a.maxBDegree = 1;
  CHECK_THROWS_AS(searchFeq(X, {P("x^2", X)}, MultiPoly(), a), NotFoundWithinBounds);
  AnsatzSpec big;
  big.maxOrder = 6;
  big.maxCoeffDegree = 6;
  big.maxSDegree = 2;
  big.gradingFilter = false;
  big.maxUnknowns = 100;
  CHECK_THROWS_AS(searchFeq(XYZ, {P("x*y*z", XYZ)}, MultiPoly(), big), CapExceeded);
  AnsatzSpec bad;
  bad.cVectors = {{2}};
  CHECK_THROWS_AS(searchFeq(X, {P("x", X)}, MultiPoly(), bad), InvalidArgument);
}

TEST_CASE("Mustata lift") {
  auto m = mustataLift(XYZ, {P("x*y", XYZ), P("x*z", XYZ)});
  CHECK(m.newVariables == std::vector<std::string>{"y1", "y2"});
  CHECK(m.h == P("y1*x*y + y2*x*z", m.variables));
  CHECK(mustataLift(X, {P("x", X)}).h == P("y1*x", {"x", "y1"}));
  std::vector<std::string> xy{"x", "y"};
  CHECK(mustataLift(xy, {P("x^2", xy), P("y^3", xy)}).h == P("y1*x^2 + y2*y^3", {"x", "y", "y1", "y2"}));
  auto clash = mustataLift({"x", "y1"}, {P("x", {"x", "y1"})});
  CHECK(clash.newVariables == std::vector<std::string>{"y_1"});
}

TEST_CASE("Mustata consistency for (xy, xz)") {
  AnsatzSpec a;
  a.kind = FeqKind::BmsMulti;
  a.maxOrder = 2;
  auto pair = searchFeq(XYZ, {P("x*y", XYZ), P("x*z", XYZ)}, MultiPoly(), a);
  auto m = mustataLift(XYZ, {P("x*y", XYZ), P("x*z", XYZ)});
  AnsatzSpec la;
  la.maxOrder = 3;
  auto start = std::chrono::steady_clock::now();
  auto lifted = searchFeq(m.variables, {m.h}, MultiPoly(), la);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::minutes(15));
  CHECK(lifted.b == B("s+1") * pair.b);
  CHECK(divideBySPlusOne(lifted.b) == pair.b);
  checkCertificate(lifted, m.variables, {m.h});
}

TEST_CASE("division by s+1") {
  CHECK(divideBySPlusOne(B("(s+1)*(s+2)")) == B("s+2"));
  CHECK(divideBySPlusOne(B("(s+1)^2*(s+1/2)")) == B("(s+1)*(s+1/2)"));
  CHECK(divideBySPlusOne(B("s*(s+1)")) == B("s"));
  CHECK_THROWS_AS(divideBySPlusOne(B("s+2")), InvalidArgument);
}

TEST_CASE("minimal exponent") {
  CHECK(*minimalExponent(B("(s+1)*(s+1/2)")) == makeRational(1, 2));
  CHECK(*minimalExponent(B("(s+1)^2*(s+3/4)*(s+1/2)*(s+1/4)")) == makeRational(1, 4));
  CHECK_FALSE(minimalExponent(B("s+1")).has_value());
  CHECK_THROWS_AS(minimalExponent(B("(s+1)*(s^2-2)")), HypothesisViolated);
  auto fac = factorRationalRoots(B("(s+1)^2*(s+2)*(s^2+1)"));
  REQUIRE(fac.roots.size() == 2);
  CHECK(fac.roots[0] == std::make_pair(Rational(-2), 1));
  CHECK(fac.roots[1] == std::make_pair(Rational(-1), 2));
  CHECK(fac.rest == B("s^2+1"));
}

TEST_CASE("summand-restricted search agrees with the ring") {
  std::vector<std::string> xy{"x", "y"};
  AnsatzSpec a;
  a.maxOrder = 5;
  a.maxCoeffDegree = 1;
  a.maxBDegree = 5;
  a.gradingFilter = false;
  auto ring = searchFeq(xy, {P("x^4*y", xy)}, MultiPoly(), a);
  a.subring = Semigroup(2, {{1, 1}, {0, 3}});
  auto sub = searchFeq(xy, {P("x^4*y", xy)}, MultiPoly(), a);
  CHECK(ring.b == B("(s+1)^2*(s+3/4)*(s+1/2)*(s+1/4)"));
  CHECK(sub.b == ring.b);
  CHECK(sub.unknowns < ring.unknowns);
  checkCertificate(sub, xy, {P("x^4*y", xy)});
  a.subring = Semigroup(2, {{2, 0}, {0, 2}});
  CHECK_THROWS_AS(searchFeq(xy, {P("x^4*y", xy)}, MultiPoly(), a), HypothesisViolated);
}
