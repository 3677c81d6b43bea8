#include "bsfe/monomial_ideal.hpp"

#include <algorithm>

#include "bsfe/error.hpp"

namespace bsfe {

std::vector<Exponent> minimalElements(std::vector<Exponent> points) {
  std::sort(points.begin(), points.end(), [](const Exponent& a, const Exponent& b) {
    int da = totalDegree(a), db = totalDegree(b);
    return da != db ? da < db : a < b;
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Exponent> out;
  for (const auto& p : points) {
    bool dominated = std::any_of(out.begin(), out.end(), [&](const Exponent& q) { return dividesExponent(q, p); });
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MonomialIdeal::MonomialIdeal(int dimension, std::vector<Exponent> generators) : dim_(dimension) {
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != dim_) throw InvalidArgument("generator has wrong dimension");
    for (int x : g)
      if (x < 0) throw InvalidArgument("negative exponent in monomial ideal generator");
  }
  gens_ = minimalElements(std::move(generators));
}

MonomialIdeal MonomialIdeal::unit(int dimension) { return MonomialIdeal(dimension, {Exponent(dimension, 0)}); }

bool MonomialIdeal::isUnit() const { return gens_.size() == 1 && totalDegree(gens_[0]) == 0; }

bool MonomialIdeal::contains(const Exponent& v) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Exponent& g) { return dividesExponent(g, v); });
}

bool MonomialIdeal::containsIdeal(const MonomialIdeal& o) const {
  return std::all_of(o.gens_.begin(), o.gens_.end(), [&](const Exponent& g) { return contains(g); });
}

MonomialIdeal MonomialIdeal::operator+(const MonomialIdeal& o) const {
  if (o.dim_ != dim_) throw InvalidArgument("ideal dimensions differ");
  std::vector<Exponent> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return MonomialIdeal(dim_, std::move(g));
}

MonomialIdeal MonomialIdeal::operator*(const MonomialIdeal& o) const {
  if (o.dim_ != dim_) throw InvalidArgument("ideal dimensions differ");
  std::vector<Exponent> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) {
      Exponent c(dim_);
      for (int i = 0; i < dim_; ++i) c[i] = a[i] + b[i];
      g.push_back(std::move(c));
    }
  return MonomialIdeal(dim_, std::move(g));
}

MonomialIdeal MonomialIdeal::power(int n) const {
  if (n < 0) throw InvalidArgument("negative ideal power");
  MonomialIdeal r = unit(dim_);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

Exponent MonomialIdeal::maxExponents() const {
  Exponent m(dim_, 0);
  for (const auto& g : gens_)
    for (int i = 0; i < dim_; ++i) m[i] = std::max(m[i], g[i]);
  return m;
}

std::string MonomialIdeal::toString(const std::vector<std::string>& variables) const {
  if (gens_.empty()) return "<0>";
  std::string out = "<";
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    if (k) out += ", ";
    out += MultiPoly::monomial(variables, gens_[k]).toString();
  }
  return out + ">";
}

std::vector<std::string> defaultVariableNames(int d) {
  std::vector<std::string> out;
  for (int i = 0; i < d; ++i) out.push_back(d <= 3 ? std::string(1, "xyz"[i]) : "x" + std::to_string(i + 1));
  return out;
}

}  // namespace bsfe
