#include "dqm/field.hpp"

#include <array>
#include <memory>
#include <mutex>

#include "dqm/error.hpp"

namespace dqm {
namespace {

bool prime_power(unsigned q, unsigned& p, unsigned& e) {
  if (q < 2) return false;
  for (p = 2; p * p <= q; ++p)
    if (q % p == 0) break;
  if (p * p > q) p = q;
  e = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  return r == 1;
}

// Polynomials over F_p as digit vectors, low to high.
using Pp = std::vector<unsigned>;

void trim(Pp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Pp pmod(Pp a, const Pp& m, unsigned p) {
  trim(a);
  // m is monic
  while (a.size() >= m.size()) {
    unsigned c = a.back();
    std::size_t sh = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[sh + i] = (a[sh + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

Pp from_counter(unsigned c, unsigned p, unsigned len) {
  Pp r(len);
  for (unsigned i = 0; i < len; ++i) {
    r[i] = c % p;
    c /= p;
  }
  return r;
}

bool irreducible(const Pp& f, unsigned p) {
  unsigned e = unsigned(f.size()) - 1;
  for (unsigned d = 1; 2 * d <= e; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned c = 0; c < count; ++c) {
      Pp g = from_counter(c, p, d);
      g.push_back(1);
      if (pmod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

const Field& Field::get(unsigned q) {
  static std::array<std::unique_ptr<Field>, 257> table;
  static std::mutex mu;
  unsigned p, e;
  if (q > 256 || !prime_power(q, p, e))
    throw Error(ErrorCode::InvalidArgument, "q must be a prime power <= 256, got " + std::to_string(q));
  std::lock_guard<std::mutex> lock(mu);
  if (!table[q]) table[q].reset(new Field(q));
  return *table[q];
}

Field::Field(unsigned q) : q_(q) {
  prime_power(q, p_, e_);
  // Smallest monic irreducible modulus of degree e in counter order.
  unsigned count = q_;
  for (unsigned c = 0; c < count; ++c) {
    Pp f = from_counter(c, p_, e_);
    f.push_back(1);
    if (e_ == 1 || irreducible(f, p_)) {
      modulus_ = f;
      break;
    }
  }
  add_.resize(std::size_t(q_) * q_);
  mul_.resize(std::size_t(q_) * q_);
  neg_.resize(q_);
  inv_.resize(q_);
  std::vector<Pp> digits(q_);
  for (unsigned a = 0; a < q_; ++a) digits[a] = from_counter(a, p_, e_);
  auto encode = [&](const Pp& v) {
    unsigned c = 0;
    for (std::size_t i = v.size(); i-- > 0;) c = c * p_ + v[i];
    return FqCode(c);
  };
  for (unsigned a = 0; a < q_; ++a) {
    Pp n(e_);
    for (unsigned i = 0; i < e_; ++i) n[i] = (p_ - digits[a][i]) % p_;
    neg_[a] = encode(n);
    for (unsigned b = 0; b < q_; ++b) {
      Pp s(e_);
      for (unsigned i = 0; i < e_; ++i) s[i] = (digits[a][i] + digits[b][i]) % p_;
      add_[idx(a, b)] = encode(s);
      Pp prod(2 * e_, 0);
      for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p_;
      Pp r = pmod(prod, modulus_, p_);
      r.resize(e_, 0);
      mul_[idx(a, b)] = encode(r);
    }
  }
  for (unsigned a = 1; a < q_; ++a)
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[idx(a, b)] == 1) inv_[a] = FqCode(b);
}

FqCode Field::inv(FqCode a) const {
  if (a == 0) throw Error(ErrorCode::NotAUnit, "zero has no inverse in F_q");
  return inv_[a];
}

FqCode Field::pow(FqCode a, unsigned long long n) const {
  FqCode r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

FqCode Field::from_int(long long n) const {
  long long r = n % (long long)p_;
  if (r < 0) r += p_;
  return FqCode(r);
}

}  // namespace dqm
