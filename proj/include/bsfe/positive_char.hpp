#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsfe/monomial_ideal.hpp"
#include "bsfe/multipoly.hpp"
#include "bsfe/semigroup.hpp"

namespace bsfe {

bool isPrime(long n);
/// p^e, throwing CapExceeded when it does not fit in a long.
long primePower(long p, int e);

/// Polynomial over F_p with coefficients in [1, p-1].
class PrimeFieldPoly {
 public:
  PrimeFieldPoly(long p, std::vector<std::string> variables);
  /// Reduction of a rational polynomial; denominators must be prime to p.
  static PrimeFieldPoly fromRational(long p, const MultiPoly& q);
  static PrimeFieldPoly monomial(long p, std::vector<std::string> variables, Exponent e, long c = 1);

  long characteristic() const { return p_; }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::map<Exponent, long, GrlexGreater>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  long coefficient(const Exponent& e) const;

  void addTerm(const Exponent& e, long c);
  PrimeFieldPoly& operator+=(const PrimeFieldPoly& o);
  PrimeFieldPoly& operator-=(const PrimeFieldPoly& o);
  friend PrimeFieldPoly operator+(PrimeFieldPoly a, const PrimeFieldPoly& b) { return a += b; }
  friend PrimeFieldPoly operator-(PrimeFieldPoly a, const PrimeFieldPoly& b) { return a -= b; }
  friend PrimeFieldPoly operator*(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
  PrimeFieldPoly operator*(long c) const;
  PrimeFieldPoly pow(unsigned n) const;
  /// r^{p^e}, computed by scaling exponents (coefficients are fixed by Frobenius).
  PrimeFieldPoly frobenius(int e) const;
  friend bool operator==(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
    return a.p_ == b.p_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const PrimeFieldPoly& a, const PrimeFieldPoly& b) { return !(a == b); }
  std::string toString() const;

 private:
  void check(const PrimeFieldPoly& o) const;
  long p_;
  std::vector<std::string> vars_;
  std::map<Exponent, long, GrlexGreater> terms_;
};

/// psi_u(x^v) = x^{(v-u)/p^e} when v >= u and p^e divides v-u, else 0.
struct CartierMap {
  long p = 2;
  int level = 1;
  Exponent twist;
  long q() const { return primePower(p, level); }
};

PrimeFieldPoly applyCartier(const CartierMap& psi, const PrimeFieldPoly& f);

/// Generator of the image of x^w R under all level-e Cartier maps:
/// max(0, ceil((w_i+1)/q) - 1), i.e. floor(w_i/q).
Exponent cartierImageGenerator(const Exponent& w, long q);

struct TestIdealReport {
  long p = 0;
  Rational lambda;
  MonomialIdeal ideal;                // union over the computed levels
  std::vector<MonomialIdeal> levels;  // sum of level-e images of I^{ceil(p^e lambda)}, e = 1, 2, ...
  std::optional<int> stabilizedAt;    // first e whose level agrees with e+1
  bool stabilized() const { return stabilizedAt.has_value(); }
};

/// Sum over all level-e Cartier maps of psi(I^N), N = ceil(p^e lambda), for
/// I monomial in F_p[x_1..x_d].
MonomialIdeal testIdealLevel(const MonomialIdeal& ideal, const Rational& lambda, long p, int e);

/// Ascending union of the levels, stopping once two consecutive levels agree
/// or at eMax.
TestIdealReport testIdealMonomial(const MonomialIdeal& ideal, const Rational& lambda, long p, int eMax = 4);

/// a -> beta(psi(a)) on A = K[S].
class RestrictedCartier {
 public:
  RestrictedCartier(Semigroup s, CartierMap psi);
  PrimeFieldPoly apply(const PrimeFieldPoly& a) const;
  const Semigroup& semigroup() const { return s_; }
  const CartierMap& map() const { return psi_; }

 private:
  Semigroup s_;
  CartierMap psi_;
};
/// Throws HypothesisViolated when p divides the index of the lattice.
RestrictedCartier cartierRestrict(const Semigroup& s, const CartierMap& psi);

/// Monomials of S lying in J, as the minimal elements of S ∩ J (S must be
/// N^d ∩ L).
MonomialIdeal contractToSubring(const Semigroup& s, const MonomialIdeal& j);

struct SummandTestIdealReport {
  MonomialIdeal intrinsic;   // minimal elements in S of tau_A
  MonomialIdeal retraction;  // minimal elements of tau_R(IR) ∩ S
  bool agree = false;
  /// Coordinate projections of L onto Z and p prime to the index; the two
  /// routes must then agree.
  bool hypothesisHolds = false;
  std::optional<int> intrinsicStabilizedAt, retractionStabilizedAt;
};

/// Test ideal of I ⊆ A = K[S] computed with the Cartier maps of A and by
/// contracting the test ideal of IR. Throws when p divides the index, and
/// when the routes differ although the hypothesis holds.
SummandTestIdealReport testIdealSummand(const Semigroup& s, const MonomialIdeal& ideal, const Rational& lambda,
                                        long p, int eMax = 4);

/// Level-e intrinsic test ideal of I ⊆ K[S].
MonomialIdeal summandTestIdealLevel(const Semigroup& s, const MonomialIdeal& ideal, const Rational& lambda, long p,
                                    int e);

}  // namespace bsfe
