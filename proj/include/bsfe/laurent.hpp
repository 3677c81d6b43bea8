#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include "bsfe/multipoly.hpp"

namespace bsfe {

/// A declared tuple f_1..f_l together with its product F and the cofactors F/f_i,
/// all expressed over the numerator variable list.
class LocContext {
 public:
  LocContext(std::vector<MultiPoly> f, const std::vector<std::string>& numeratorVariables);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<MultiPoly>& f() const { return f_; }
  const MultiPoly& product() const { return product_; }
  const MultiPoly& cofactor(std::size_t i) const { return cofactors_[i]; }
  /// F^k, cached.
  const MultiPoly& productPower(int k) const;
  bool sameTuple(const LocContext& o) const;

 private:
  std::vector<std::string> vars_;
  std::vector<MultiPoly> f_;
  MultiPoly product_;
  std::vector<MultiPoly> cofactors_;
  mutable std::deque<MultiPoly> powers_;
  mutable std::mutex powersMutex_;
};

using LocContextPtr = std::shared_ptr<const LocContext>;

LocContextPtr makeLocContext(std::vector<MultiPoly> f, const std::vector<std::string>& numeratorVariables);

/// numerator / (f_1...f_l)^k. Reduction is lazy; equality is tested by
/// cross-multiplication.
class LaurentLoc {
 public:
  LaurentLoc(LocContextPtr ctx, MultiPoly numerator, int denomExponent = 0);

  const LocContextPtr& context() const { return ctx_; }
  const MultiPoly& numerator() const { return num_; }
  int denomExponent() const { return k_; }
  bool isZero() const { return num_.isZero(); }

  /// Same value with denominator exponent raised to k (k >= current).
  MultiPoly numeratorAt(int k) const;
  /// Cancels factors of F from the numerator as long as possible.
  LaurentLoc reduced() const;

  LaurentLoc& operator+=(const LaurentLoc& o);
  LaurentLoc& operator-=(const LaurentLoc& o);
  friend LaurentLoc operator+(LaurentLoc a, const LaurentLoc& b) { return a += b; }
  friend LaurentLoc operator-(LaurentLoc a, const LaurentLoc& b) { return a -= b; }
  friend LaurentLoc operator*(const LaurentLoc& a, const LaurentLoc& b);
  LaurentLoc operator*(const MultiPoly& p) const;
  LaurentLoc operator*(const Rational& c) const;
  /// Divides by F^j.
  LaurentLoc divideByProductPower(int j) const;
  friend bool operator==(const LaurentLoc& a, const LaurentLoc& b);
  friend bool operator!=(const LaurentLoc& a, const LaurentLoc& b) { return !(a == b); }

  std::string toString() const;

 private:
  LocContextPtr ctx_;
  MultiPoly num_;
  int k_;
  void checkSame(const LaurentLoc& o) const;
};

}  // namespace bsfe
