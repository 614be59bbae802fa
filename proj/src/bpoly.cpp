#include "dqm/bpoly.hpp"

#include <algorithm>
#include <deque>

#include "dqm/error.hpp"

namespace dqm {

namespace {
void check_same(const Field* a, const Field* b) {
  if (a != b) throw Error(ErrorCode::DomainMismatch, "polynomials over different fields");
}
}  // namespace

BPoly::BPoly(const APoly& a) : f_(&a.field()) {
  if (!a.is_zero()) c_.push_back(a);
}

BPoly::BPoly(const Field& f, std::vector<APoly> t_coeffs) : f_(&f), c_(std::move(t_coeffs)) {
  for (auto& a : c_) check_same(f_, &a.field());
  trim();
}

BPoly BPoly::t(const Field& f) { return BPoly(f, {APoly(f), APoly::constant(f, 1)}); }

BPoly BPoly::t_minus_theta_pow(const Field& f, std::size_t e) {
  return BPoly(f, {APoly::monomial(f, f.neg(1), e), APoly::constant(f, 1)});
}

BPoly BPoly::from_monomials(const Field& f, const std::vector<Monom>& terms) {
  std::vector<APoly> c;
  for (const auto& m : terms) {
    if (m.e_t >= c.size()) c.resize(m.e_t + 1, APoly(f));
    c[m.e_t] += APoly::monomial(f, m.c, m.e_theta);
  }
  return BPoly(f, std::move(c));
}

int BPoly::deg_theta() const {
  int d = kDegNegInf;
  for (const auto& a : c_) d = std::max(d, a.degree());
  return d;
}

const APoly& BPoly::t_coeff(std::size_t k) const {
  static thread_local std::deque<APoly> zeros;
  if (k < c_.size()) return c_[k];
  for (const auto& z : zeros)
    if (&z.field() == f_) return z;
  zeros.emplace_back(*f_);
  return zeros.back();
}

BPoly& BPoly::operator+=(const BPoly& o) {
  check_same(f_, o.f_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), APoly(*f_));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

BPoly& BPoly::operator-=(const BPoly& o) {
  check_same(f_, o.f_);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), APoly(*f_));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

BPoly operator*(const BPoly& a, const BPoly& b) {
  BPoly r(*a.f_);
  r.add_product(a, b);
  return r;
}

BPoly BPoly::operator-() const {
  BPoly r(*f_);
  r -= *this;
  return r;
}

bool operator<(const BPoly& a, const BPoly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t k = a.c_.size(); k-- > 0;) {
    if (a.c_[k] < b.c_[k]) return true;
    if (b.c_[k] < a.c_[k]) return false;
  }
  return false;
}

void BPoly::add_product(const BPoly& a, const BPoly& b) {
  check_same(f_, a.f_);
  check_same(f_, b.f_);
  if (a.c_.empty() || b.c_.empty()) return;
  if (&a == this || &b == this) {
    BPoly ac = a, bc = b;
    add_product(ac, bc);
    return;
  }
  std::size_t n = a.c_.size() + b.c_.size() - 1;
  if (c_.size() < n) c_.resize(n, APoly(*f_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c_[i + j].add_product(a.c_[i], b.c_[j]);
  }
  trim();
}

BPoly BPoly::scaled(FqCode s) const {
  BPoly r(*f_);
  if (!s) return r;
  r.c_.reserve(c_.size());
  for (const auto& a : c_) r.c_.push_back(a.scaled(s));
  return r;
}

BPoly BPoly::times(const APoly& a) const {
  BPoly r(*f_);
  if (a.is_zero()) return r;
  r.c_.reserve(c_.size());
  for (const auto& x : c_) r.c_.push_back(x * a);
  return r;
}

BPoly BPoly::pow(unsigned n) const {
  BPoly r = constant(*f_, 1), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

BPoly BPoly::twist(int k) const {
  BPoly r(*f_);
  r.c_.reserve(c_.size());
  for (const auto& a : c_) r.c_.push_back(a.twist(k));
  return r;
}

APoly BPoly::eval_t_at_theta() const {
  APoly r(*f_);
  for (std::size_t k = 0; k < c_.size(); ++k) r.add_scaled(1, c_[k], k);
  return r;
}

APoly BPoly::eval_t(const APoly& x) const {
  APoly r(*f_);
  for (std::size_t k = c_.size(); k-- > 0;) {
    r = r * x;
    r += c_[k];
  }
  return r;
}

APoly BPoly::content() const {
  APoly g(*f_);
  for (const auto& a : c_) {
    g = APoly::gcd(g, a);
    if (g.is_one()) break;
  }
  return g;
}

BPoly BPoly::exact_div(const APoly& d) const {
  BPoly r(*f_);
  r.c_.reserve(c_.size());
  for (const auto& a : c_) r.c_.push_back(a.exact_div(d));
  r.trim();
  return r;
}

std::optional<BPoly> BPoly::try_exact_div(const BPoly& d) const {
  check_same(f_, d.f_);
  if (d.is_zero()) throw Error(ErrorCode::NotAUnit, "division by zero in F_q[t,θ]");
  if (is_zero()) return BPoly(*f_);
  if (c_.size() < d.c_.size()) return std::nullopt;
  BPoly rem = *this;
  std::vector<APoly> quo(c_.size() - d.c_.size() + 1, APoly(*f_));
  const APoly& lead = d.c_.back();
  const std::size_t nd = d.c_.size();
  for (std::size_t k = quo.size(); k-- > 0;) {
    const APoly& top = k + nd - 1 < rem.c_.size() ? rem.c_[k + nd - 1] : APoly(*f_);
    if (top.is_zero()) continue;
    APoly qk(*f_), r(*f_);
    APoly::divmod(top, lead, qk, r);
    if (!r.is_zero()) return std::nullopt;
    for (std::size_t j = 0; j < nd; ++j) {
      if (k + j < rem.c_.size()) rem.c_[k + j] -= qk * d.c_[j];
    }
    quo[k] = std::move(qk);
  }
  rem.trim();
  if (!rem.is_zero()) return std::nullopt;
  return BPoly(*f_, std::move(quo));
}

BPoly BPoly::exact_div(const BPoly& d) const {
  auto r = try_exact_div(d);
  if (!r) throw Error(ErrorCode::NormalizationGateFailed, "inexact division in F_q[t,θ]");
  return *r;
}

std::vector<Monom> BPoly::monomials() const {
  std::vector<Monom> out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    auto cs = c_[k].coeffs();
    for (std::size_t e = 0; e < cs.size(); ++e)
      if (cs[e]) out.push_back({cs[e], k, e});
  }
  return out;
}

std::string BPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[k].to_string() + ")";
    if (k) s += k > 1 ? "*t^" + std::to_string(k) : "*t";
  }
  return s;
}

}  // namespace dqm
