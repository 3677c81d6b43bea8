#pragma once

#include <string>
#include <vector>

#include "bsfe/multipoly.hpp"

namespace bsfe {

/// Monomial ideal in d variables, stored as its minimal generating antichain in
/// sorted order. The zero ideal has no generators.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  MonomialIdeal(int dimension, std::vector<Exponent> generators);

  static MonomialIdeal unit(int dimension);
  static MonomialIdeal zero(int dimension) { return MonomialIdeal(dimension, {}); }

  int dimension() const { return dim_; }
  const std::vector<Exponent>& generators() const { return gens_; }
  bool isZero() const { return gens_.empty(); }
  bool isUnit() const;

  bool contains(const Exponent& v) const;
  /// Every generator of `o` lies in this ideal.
  bool containsIdeal(const MonomialIdeal& o) const;

  MonomialIdeal operator+(const MonomialIdeal& o) const;
  MonomialIdeal operator*(const MonomialIdeal& o) const;
  MonomialIdeal power(int n) const;
  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.dim_ == b.dim_ && a.gens_ == b.gens_;
  }
  friend bool operator!=(const MonomialIdeal& a, const MonomialIdeal& b) { return !(a == b); }

  /// Largest exponent of each variable among the generators.
  Exponent maxExponents() const;

  /// "<x^2, y^2>" style text with the given variable names.
  std::string toString(const std::vector<std::string>& variables) const;

 private:
  int dim_ = 0;
  std::vector<Exponent> gens_;
};

/// x, y, z for d <= 3, otherwise x1..xd.
std::vector<std::string> defaultVariableNames(int d);

/// Minimal elements of a finite set under the componentwise order, sorted.
std::vector<Exponent> minimalElements(std::vector<Exponent> points);

/// Enumerates all exponent vectors in the box 0 <= v <= bound, in lexicographic order.
template <class F>
void forEachInBox(const Exponent& bound, F&& visit) {
  Exponent v(bound.size(), 0);
  for (int b : bound)
    if (b < 0) return;
  while (true) {
    visit(static_cast<const Exponent&>(v));
    std::size_t i = v.size();
    while (i > 0) {
      --i;
      if (v[i] < bound[i]) {
        ++v[i];
        break;
      }
      v[i] = 0;
      if (i == 0) return;
    }
    if (v.empty()) return;
  }
}

}  // namespace bsfe
