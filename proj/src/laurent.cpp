#include "bsfe/laurent.hpp"

#include "bsfe/error.hpp"

namespace bsfe {

LocContext::LocContext(std::vector<MultiPoly> f, const std::vector<std::string>& numeratorVariables)
    : vars_(numeratorVariables) {
  if (f.empty()) throw InvalidArgument("localization tuple must be nonempty");
  product_ = MultiPoly::constant(vars_, 1);
  for (auto& fi : f) {
    if (fi.isZero()) throw InvalidArgument("localization tuple contains the zero polynomial");
    f_.push_back(fi.embed(vars_));
    product_ = product_ * f_.back();
  }
  for (std::size_t i = 0; i < f_.size(); ++i) {
    MultiPoly c = MultiPoly::constant(vars_, 1);
    for (std::size_t j = 0; j < f_.size(); ++j)
      if (j != i) c = c * f_[j];
    cofactors_.push_back(c);
  }
  powers_.push_back(MultiPoly::constant(vars_, 1));
}

const MultiPoly& LocContext::productPower(int k) const {
  if (k < 0) throw InvalidArgument("negative power of the localization product");
  std::lock_guard<std::mutex> lock(powersMutex_);
  while (static_cast<int>(powers_.size()) <= k) powers_.push_back(powers_.back() * product_);
  return powers_[k];
}

bool LocContext::sameTuple(const LocContext& o) const { return this == &o || (vars_ == o.vars_ && f_ == o.f_); }

LocContextPtr makeLocContext(std::vector<MultiPoly> f, const std::vector<std::string>& numeratorVariables) {
  return std::make_shared<const LocContext>(std::move(f), numeratorVariables);
}

LaurentLoc::LaurentLoc(LocContextPtr ctx, MultiPoly numerator, int denomExponent)
    : ctx_(std::move(ctx)), num_(numerator.embed(ctx_->variables())), k_(denomExponent) {
  if (k_ < 0) throw InvalidArgument("negative denominator exponent");
}

void LaurentLoc::checkSame(const LaurentLoc& o) const {
  if (!ctx_->sameTuple(*o.ctx_)) throw InvalidArgument("localized elements over different tuples");
}

MultiPoly LaurentLoc::numeratorAt(int k) const {
  if (k < k_) throw InvalidArgument("cannot lower the denominator exponent without reduction");
  if (k == k_) return num_;
  return num_ * ctx_->productPower(k - k_);
}

LaurentLoc LaurentLoc::reduced() const {
  LaurentLoc r = *this;
  if (r.num_.isZero()) {
    r.k_ = 0;
    return r;
  }
  while (r.k_ > 0) {
    auto q = r.num_.divideExact(ctx_->product());
    if (!q) break;
    r.num_ = std::move(*q);
    --r.k_;
  }
  return r;
}

LaurentLoc& LaurentLoc::operator+=(const LaurentLoc& o) {
  checkSame(o);
  int k = std::max(k_, o.k_);
  num_ = numeratorAt(k) + o.numeratorAt(k);
  k_ = k;
  return *this;
}

LaurentLoc& LaurentLoc::operator-=(const LaurentLoc& o) {
  checkSame(o);
  int k = std::max(k_, o.k_);
  num_ = numeratorAt(k) - o.numeratorAt(k);
  k_ = k;
  return *this;
}

LaurentLoc operator*(const LaurentLoc& a, const LaurentLoc& b) {
  a.checkSame(b);
  return LaurentLoc(a.ctx_, a.num_ * b.num_, a.k_ + b.k_);
}

LaurentLoc LaurentLoc::operator*(const MultiPoly& p) const { return LaurentLoc(ctx_, num_ * p.embed(ctx_->variables()), k_); }

LaurentLoc LaurentLoc::operator*(const Rational& c) const { return LaurentLoc(ctx_, num_ * c, k_); }

LaurentLoc LaurentLoc::divideByProductPower(int j) const { return LaurentLoc(ctx_, num_, k_ + j); }

bool operator==(const LaurentLoc& a, const LaurentLoc& b) {
  a.checkSame(b);
  int k = std::max(a.k_, b.k_);
  return a.numeratorAt(k) == b.numeratorAt(k);
}

std::string LaurentLoc::toString() const {
  if (k_ == 0) return num_.toString();
  std::string den = "(" + ctx_->product().toString() + ")";
  if (k_ > 1) den += "^" + std::to_string(k_);
  return "(" + num_.toString() + ")/" + den;
}

}  // namespace bsfe
