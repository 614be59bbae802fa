#include "dqm/kseries.hpp"

#include "dqm/error.hpp"

namespace dqm {

KSeries::KSeries(USeries num, APoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

KSeries::KSeries(USeries num) : num_(std::move(num)), den_(APoly::constant(num_.field(), 1)) {}

void KSeries::normalize() {
  if (den_.is_zero()) throw Error(ErrorCode::NotAUnit, "zero denominator");
  const Field& f = num_.field();
  FqCode l = den_.leading();
  if (l != 1) {
    FqCode li = f.inv(l);
    den_ = den_.scaled(li);
    num_ = num_.scaled(BPoly::constant(f, li));
  }
  if (den_.is_one()) return;
  // gcd of den with every θ-coefficient of the numerator
  APoly g = den_;
  for (const auto& c : num_.coeffs()) {
    for (const auto& a : c.t_coeffs()) {
      if (a.is_zero()) continue;
      g = APoly::gcd(g, a % g);
      if (g.is_one()) return;
    }
  }
  if (g.is_one()) return;
  den_ = den_.exact_div(g);
  std::vector<BPoly> cs;
  cs.reserve(num_.precision());
  for (const auto& c : num_.coeffs()) cs.push_back(c.is_zero() ? c : c.exact_div(g));
  num_ = USeries(f, num_.precision(), std::move(cs));
}

const USeries& KSeries::to_integral() const {
  if (!den_.is_one())
    throw Error(ErrorCode::NormalizationGateFailed, "series has non-integral coefficients (denominator " +
                                                        den_.to_string() + ")");
  return num_;
}

RationalFunction KSeries::coeff_t_free(std::size_t n) const {
  const BPoly& c = num_.coeff(n);
  if (!c.is_t_free()) throw Error(ErrorCode::DomainMismatch, "coefficient depends on t");
  return RationalFunction(c.t_coeff(0), den_);
}

KSeries operator+(const KSeries& a, const KSeries& b) {
  if (a.den_ == b.den_) return KSeries(a.num_ + b.num_, a.den_);
  APoly g = APoly::gcd(a.den_, b.den_);
  APoly ca = b.den_.exact_div(g), cb = a.den_.exact_div(g);
  return KSeries(a.num_.scaled(ca) + b.num_.scaled(cb), a.den_ * ca);
}

KSeries operator-(const KSeries& a, const KSeries& b) { return a + (-b); }

KSeries operator*(const KSeries& a, const KSeries& b) { return KSeries(a.num_ * b.num_, a.den_ * b.den_); }

KSeries KSeries::scaled(const RationalFunction& r) const {
  return KSeries(num_.scaled(BPoly(r.num())), den_ * r.den());
}

}  // namespace dqm
