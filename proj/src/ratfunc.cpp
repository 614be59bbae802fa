#include "dqm/ratfunc.hpp"

#include "dqm/error.hpp"

namespace dqm {

RationalFunction::RationalFunction(APoly num) : num_(std::move(num)), den_(APoly::constant(num_.field(), 1)) {}

RationalFunction::RationalFunction(APoly num, APoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::NotAUnit, "zero denominator");
  if (num_.is_zero()) {
    den_ = APoly::constant(num_.field(), 1);
    return;
  }
  APoly g = APoly::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.exact_div(g);
    den_ = den_.exact_div(g);
  }
  FqCode l = den_.leading();
  if (l != 1) {
    FqCode li = num_.field().inv(l);
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
  }
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw Error(ErrorCode::NotAUnit, "zero is not invertible in K");
  return RationalFunction(den_, num_);
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace dqm
