#include "dqm/useries.hpp"

#include <algorithm>

#include "dqm/error.hpp"

namespace dqm {

namespace {
void check_same(const USeries& a, const USeries& b) {
  if (&a.field() != &b.field()) throw Error(ErrorCode::DomainMismatch, "series over different fields");
}
std::size_t val_or_prec(const USeries& s) {
  auto v = s.valuation();
  return v ? *v : s.precision();
}
}  // namespace

USeries::USeries(const Field& f, std::size_t prec) : f_(&f), c_(prec, BPoly(f)) {}

USeries::USeries(const Field& f, std::size_t prec, std::vector<BPoly> coeffs) : f_(&f), c_(std::move(coeffs)) {
  c_.resize(prec, BPoly(f));
  for (const auto& c : c_)
    if (&c.field() != f_) throw Error(ErrorCode::DomainMismatch, "coefficient over a different field");
}

USeries USeries::one(const Field& f, std::size_t prec) { return monomial(f, prec, BPoly::constant(f, 1), 0); }

USeries USeries::monomial(const Field& f, std::size_t prec, const BPoly& c, std::size_t n) {
  USeries s(f, prec);
  if (n < prec) s.c_[n] = c;
  return s;
}

const BPoly& USeries::coeff(std::size_t n) const {
  if (n >= c_.size())
    throw Error(ErrorCode::PrecisionExhausted,
                "coefficient " + std::to_string(n) + " beyond precision " + std::to_string(c_.size()));
  return c_[n];
}

void USeries::set_coeff(std::size_t n, BPoly c) {
  if (n >= c_.size()) throw Error(ErrorCode::InvalidIndex, "index beyond precision");
  c_[n] = std::move(c);
}

CoeffDomain USeries::domain() const {
  for (const auto& c : c_)
    if (!c.is_t_free()) return CoeffDomain::AT;
  return CoeffDomain::A;
}

std::optional<std::size_t> USeries::valuation() const {
  for (std::size_t n = 0; n < c_.size(); ++n)
    if (!c_[n].is_zero()) return n;
  return std::nullopt;
}

std::size_t USeries::vanishing_order() const {
  auto v = valuation();
  if (!v)
    throw Error(ErrorCode::ZeroToPrecision, "series vanishes to precision " + std::to_string(c_.size()),
                c_.size());
  return *v;
}

USeries USeries::truncated(std::size_t n) const {
  USeries r(*this);
  if (n < r.c_.size()) r.c_.resize(n, BPoly(*f_));
  return r;
}

USeries USeries::shifted(std::size_t k) const {
  USeries r(*f_, c_.size() + k);
  for (std::size_t n = 0; n < c_.size(); ++n) r.c_[n + k] = c_[n];
  return r;
}

USeries USeries::scaled(const BPoly& c) const {
  USeries r(*f_, c_.size());
  for (std::size_t n = 0; n < c_.size(); ++n)
    if (!c_[n].is_zero()) r.c_[n] = c_[n] * c;
  return r;
}

USeries USeries::operator-() const {
  USeries r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

USeries operator+(const USeries& a, const USeries& b) {
  check_same(a, b);
  std::size_t p = std::min(a.precision(), b.precision());
  USeries r(a.field(), p);
  for (std::size_t n = 0; n < p; ++n) r.c_[n] = a.c_[n] + b.c_[n];
  return r;
}

USeries operator-(const USeries& a, const USeries& b) {
  check_same(a, b);
  std::size_t p = std::min(a.precision(), b.precision());
  USeries r(a.field(), p);
  for (std::size_t n = 0; n < p; ++n) r.c_[n] = a.c_[n] - b.c_[n];
  return r;
}

USeries operator*(const USeries& a, const USeries& b) {
  check_same(a, b);
  const std::size_t p = std::min(a.precision() + val_or_prec(b), b.precision() + val_or_prec(a));
  USeries r(a.field(), p);
  std::vector<std::size_t> nb;
  for (std::size_t j = 0; j < b.precision() && j < p; ++j)
    if (!b.c_[j].is_zero()) nb.push_back(j);
  for (std::size_t i = 0; i < a.precision() && i < p; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j : nb) {
      if (i + j >= p) break;
      r.c_[i + j].add_product(a.c_[i], b.c_[j]);
    }
  }
  return r;
}

USeries USeries::inverse() const {
  if (c_.empty() || !c_[0].is_unit()) throw Error(ErrorCode::NotAUnit, "constant term is not a unit");
  const FqCode inv0 = f_->inv(c_[0].leading_code());
  const FqCode ninv0 = f_->neg(inv0);
  USeries r(*f_, c_.size());
  r.c_[0] = BPoly::constant(*f_, inv0);
  std::vector<std::size_t> nz;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) nz.push_back(i);
  for (std::size_t n = 1; n < c_.size(); ++n) {
    BPoly acc(*f_);
    for (std::size_t i : nz) {
      if (i > n) break;
      if (!r.c_[n - i].is_zero()) acc.add_product(c_[i], r.c_[n - i]);
    }
    r.c_[n] = acc.scaled(ninv0);
  }
  return r;
}

USeries USeries::pow(unsigned n) const {
  // Precision follows the product rule at each step.
  USeries r = one(*f_, c_.size() + (n ? val_or_prec(*this) * (n - 1) : 0));
  USeries b = *this;
  bool first = true;
  while (n) {
    if (n & 1) {
      r = first ? b : r * b;
      first = false;
    }
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

USeries USeries::tau(unsigned k) const {
  std::size_t s = 1;
  for (unsigned i = 0; i < k; ++i) s *= f_->q();
  const std::size_t prec = c_.empty() ? 0 : s * (c_.size() - 1) + 1;
  USeries r(*f_, prec);
  for (std::size_t n = 0; n < c_.size(); ++n)
    if (!c_[n].is_zero()) r.c_[n * s] = c_[n].twist(int(k));
  return r;
}

USeries USeries::twist_coeffs(int k) const {
  USeries r(*f_, c_.size());
  for (std::size_t n = 0; n < c_.size(); ++n) r.c_[n] = c_[n].twist(k);
  return r;
}

USeries USeries::specialize_t() const {
  USeries r(*f_, c_.size());
  for (std::size_t n = 0; n < c_.size(); ++n) r.c_[n] = BPoly(c_[n].eval_t_at_theta());
  return r;
}

std::vector<int> USeries::deg_t_profile() const {
  std::vector<int> d(c_.size());
  for (std::size_t n = 0; n < c_.size(); ++n) d[n] = c_[n].deg_t();
  return d;
}

bool USeries::agrees_with(const USeries& o) const {
  return agrees_with(o, std::min(precision(), o.precision()));
}

bool USeries::agrees_with(const USeries& o, std::size_t n) const {
  if (f_ != o.f_ || n > precision() || n > o.precision()) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

std::string USeries::to_string(std::size_t max_terms) const {
  std::string s;
  std::size_t shown = 0;
  for (std::size_t n = 0; n < c_.size() && shown < max_terms; ++n) {
    if (c_[n].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "[" + c_[n].to_string() + "]u^" + std::to_string(n);
    ++shown;
  }
  if (s.empty()) s = "0";
  return s + " + O(u^" + std::to_string(c_.size()) + ")";
}

}  // namespace dqm
