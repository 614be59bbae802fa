#include "dqm/apoly.hpp"

#include <algorithm>

#include "dqm/error.hpp"
#include "dqm/kernels.hpp"

namespace dqm {

namespace {
const kernels::KernelSet& K() { return kernels::active(); }

void check_same(const Field* a, const Field* b) {
  if (a != b) throw Error(ErrorCode::DomainMismatch, "polynomials over different fields");
}

unsigned long long ipow(unsigned long long b, unsigned e) {
  unsigned long long r = 1;
  while (e--) {
    if (r > (1ULL << 40) / b) throw Error(ErrorCode::InvalidArgument, "exponent overflow in twist");
    r *= b;
  }
  return r;
}
}  // namespace

APoly::APoly(const Field& f, std::vector<FqCode> coeffs) : f_(&f), c_(std::move(coeffs)) {
  for (auto c : c_)
    if (c >= f.q()) throw Error(ErrorCode::InvalidArgument, "coefficient code out of range");
  trim();
}

APoly APoly::constant(const Field& f, FqCode c) { return APoly(f, std::vector<FqCode>{c}); }

APoly APoly::monomial(const Field& f, FqCode c, std::size_t e) {
  APoly r(f);
  if (c) {
    r.c_.assign(e + 1, 0);
    r.c_[e] = c;
  }
  return r;
}

APoly& APoly::operator+=(const APoly& o) {
  check_same(f_, o.f_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  K().add(*f_, o.c_.data(), o.c_.size(), c_.data());
  trim();
  return *this;
}

APoly& APoly::operator-=(const APoly& o) {
  check_same(f_, o.f_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  K().sub(*f_, o.c_.data(), o.c_.size(), c_.data());
  trim();
  return *this;
}

APoly operator*(const APoly& a, const APoly& b) {
  APoly r(*a.f_);
  r.add_product(a, b);
  return r;
}

APoly APoly::operator-() const {
  APoly r(*f_);
  r -= *this;
  return r;
}

bool operator<(const APoly& a, const APoly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

void APoly::add_product(const APoly& a, const APoly& b) {
  check_same(f_, a.f_);
  check_same(f_, b.f_);
  if (a.c_.empty() || b.c_.empty()) return;
  if (&a == this || &b == this) {
    APoly ac = a, bc = b;
    add_product(ac, bc);
    return;
  }
  std::size_t n = a.c_.size() + b.c_.size() - 1;
  if (c_.size() < n) c_.resize(n, 0);
  K().mul_acc(*f_, a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size(), c_.data());
  trim();
}

void APoly::add_scaled(FqCode s, const APoly& a, std::size_t shift) {
  check_same(f_, a.f_);
  if (!s || a.c_.empty()) return;
  if (&a == this) {
    APoly ac = a;
    add_scaled(s, ac, shift);
    return;
  }
  if (c_.size() < a.c_.size() + shift) c_.resize(a.c_.size() + shift, 0);
  K().axpy(*f_, s, a.c_.data(), a.c_.size(), c_.data() + shift);
  trim();
}

APoly APoly::scaled(FqCode s) const {
  APoly r(*f_);
  r.add_scaled(s, *this);
  return r;
}

APoly APoly::shifted(std::size_t k) const {
  if (c_.empty()) return *this;
  APoly r(*f_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

APoly APoly::pow(unsigned long long n) const {
  APoly r = constant(*f_, 1), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

APoly APoly::twist(int k) const {
  if (k == 0 || c_.empty()) return *this;
  APoly r(*f_);
  if (k > 0) {
    unsigned long long s = ipow(f_->q(), unsigned(k));
    r.c_.assign((c_.size() - 1) * s + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * s] = c_[i];
  } else {
    unsigned long long s = ipow(f_->q(), unsigned(-k));
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] && i % s)
        throw Error(ErrorCode::NonDivisibleExponent, "inverse twist of a polynomial with exponent " + std::to_string(i));
    r.c_.assign((c_.size() - 1) / s + 1, 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = c_[i * s];
  }
  return r;
}

APoly APoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(f_->inv(leading()));
}

void APoly::divmod(const APoly& a, const APoly& b, APoly& quo, APoly& rem) {
  check_same(a.f_, b.f_);
  if (b.is_zero()) throw Error(ErrorCode::NotAUnit, "division by zero polynomial");
  const Field& f = *a.f_;
  rem = a;
  quo = APoly(f);
  if (a.c_.size() < b.c_.size()) return;
  const FqCode li = f.inv(b.leading());
  quo.c_.assign(a.c_.size() - b.c_.size() + 1, 0);
  const std::size_t nb = b.c_.size();
  for (std::size_t k = quo.c_.size(); k-- > 0;) {
    FqCode c = rem.c_[k + nb - 1];
    if (!c) continue;
    c = f.mul(c, li);
    quo.c_[k] = c;
    K().axpy(f, f.neg(c), b.c_.data(), nb, rem.c_.data() + k);
  }
  quo.trim();
  rem.trim();
}

APoly APoly::operator%(const APoly& b) const {
  APoly q(*f_), r(*f_);
  divmod(*this, b, q, r);
  return r;
}

APoly APoly::exact_div(const APoly& b) const {
  APoly q(*f_), r(*f_);
  divmod(*this, b, q, r);
  if (!r.is_zero()) throw Error(ErrorCode::NormalizationGateFailed, "inexact division in F_q[θ]");
  return q;
}

bool APoly::divides(const APoly& a) const {
  if (is_zero()) return a.is_zero();
  return (a % *this).is_zero();
}

APoly APoly::gcd(APoly a, APoly b) {
  while (!b.is_zero()) {
    APoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

APoly APoly::compose(const APoly& x) const {
  APoly r(*f_);
  for (std::size_t i = c_.size(); i-- > 0;) {
    r = r * x;
    r += constant(*f_, c_[i]);
  }
  return r;
}

std::string APoly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (!c_[i]) continue;
    if (!s.empty()) s += " + ";
    bool one = c_[i] == 1;
    if (!one || i == 0) s += std::to_string(unsigned(c_[i]));
    if (i > 0) {
      if (!one) s += "*";
      s += "θ";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

APoly bracket(const Field& f, unsigned i) {
  std::size_t e = 1;
  for (unsigned k = 0; k < i; ++k) e *= f.q();
  return APoly::monomial(f, 1, e) - APoly::theta(f);
}

APoly carlitz_factorial(const Field& f, unsigned i) {
  APoly d = APoly::constant(f, 1);
  for (unsigned k = 1; k <= i; ++k) d = bracket(f, k) * d.twist(1);
  return d;
}

}  // namespace dqm
