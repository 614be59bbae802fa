#include "dqm/carlitz.hpp"

#include "dqm/error.hpp"

namespace dqm {

AdditivePolynomial::AdditivePolynomial(const Field& f, std::vector<APoly> coeffs) : f_(&f), c_(std::move(coeffs)) {
  trim();
}

void AdditivePolynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AdditivePolynomial AdditivePolynomial::identity(const Field& f) {
  return AdditivePolynomial(f, {APoly::constant(f, 1)});
}

AdditivePolynomial compose(const AdditivePolynomial& p, const AdditivePolynomial& q) {
  const Field& f = *p.f_;
  if (p.c_.empty() || q.c_.empty()) return AdditivePolynomial(f, {});
  std::vector<APoly> r(p.c_.size() + q.c_.size() - 1, APoly(f));
  for (std::size_t i = 0; i < p.c_.size(); ++i)
    for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j].add_product(p.c_[i], q.c_[j].twist(int(i)));
  return AdditivePolynomial(f, std::move(r));
}

AdditivePolynomial operator+(const AdditivePolynomial& a, const AdditivePolynomial& b) {
  std::vector<APoly> r(std::max(a.c_.size(), b.c_.size()), APoly(*a.f_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return AdditivePolynomial(*a.f_, std::move(r));
}

AdditivePolynomial carlitz_action(const APoly& a) {
  const Field& f = a.field();
  const AdditivePolynomial phi_theta(f, {APoly::theta(f), APoly::constant(f, 1)});
  // Horner in θ: φ_a = a_0 + φ_θ∘(a_1 + φ_θ∘(...))
  AdditivePolynomial r(f, {});
  for (std::size_t k = a.size(); k-- > 0;) {
    r = compose(phi_theta, r) + AdditivePolynomial(f, {APoly::constant(f, a.coeff(k))});
  }
  return r;
}

APoly bracket_checked(const Field& f, int i) {
  if (i <= 0) throw Error(ErrorCode::InvalidIndex, "bracket [i] needs i >= 1");
  return bracket(f, unsigned(i));
}

namespace {

std::size_t qpow(const Field& f, unsigned d) {
  std::size_t r = 1;
  for (unsigned i = 0; i < d; ++i) r *= f.q();
  return r;
}

struct SparseTerm {
  std::size_t shift;
  APoly c;
};

// Divide x in place by 1 + Σ c_i u^{shift_i}.
void sparse_divide(std::vector<BPoly>& x, const std::vector<SparseTerm>& div) {
  for (std::size_t n = 0; n < x.size(); ++n) {
    for (const auto& t : div) {
      if (t.shift > n) continue;
      const BPoly& prev = x[n - t.shift];
      if (prev.is_zero()) continue;
      x[n] -= prev.times(t.c);
    }
  }
}

// f_a(u) without its constant term 1, twisted k times.
std::vector<SparseTerm> fa_terms(const AdditivePolynomial& phi, unsigned d, unsigned k, std::size_t qk) {
  const Field& f = phi.field();
  std::vector<SparseTerm> out;
  const std::size_t qd = qpow(f, d);
  for (unsigned i = 0; i < d; ++i) {
    const APoly& l = phi.coeffs()[i];
    if (l.is_zero()) continue;
    out.push_back({(qd - qpow(f, i)) * qk, l.twist(int(k))});
  }
  return out;
}

}  // namespace

USeries u_sub_a(const APoly& a, std::size_t N) {
  const Field& f = a.field();
  if (a.is_zero() || a.leading() != 1) throw Error(ErrorCode::InvalidArgument, "u_a needs monic a");
  const std::size_t qd = qpow(f, unsigned(a.degree()));
  if (qd >= N) throw Error(ErrorCode::PrecisionExhausted, "valuation q^deg(a) reaches precision");
  return u_sub_a_power(a, 1, N);
}

USeries u_sub_a_power(const APoly& a, unsigned j, std::size_t N) {
  const Field& f = a.field();
  if (a.is_zero() || a.leading() != 1) throw Error(ErrorCode::InvalidArgument, "u_a needs monic a");
  const unsigned d = unsigned(a.degree());
  const std::size_t qd = qpow(f, d);
  USeries out(f, N);
  if (std::size_t(j) * qd >= N) return out;
  const std::size_t L = N - std::size_t(j) * qd;
  std::vector<BPoly> w(L, BPoly(f));
  w[0] = BPoly::constant(f, 1);
  if (d > 0) {
    // f_a^j = Π_k τ^k(f_a)^{digit_k(j)}
    AdditivePolynomial phi = carlitz_action(a);
    unsigned rest = j, k = 0;
    std::size_t qk = 1;
    while (rest) {
      unsigned digit = rest % f.q();
      if (digit) {
        auto terms = fa_terms(phi, d, k, qk);
        for (unsigned r = 0; r < digit; ++r) sparse_divide(w, terms);
      }
      rest /= f.q();
      ++k;
      qk *= f.q();
    }
  }
  for (std::size_t n = 0; n < L; ++n)
    if (!w[n].is_zero()) out.set_coeff(n + std::size_t(j) * qd, std::move(w[n]));
  return out;
}

void for_each_monic(const Field& f, unsigned d, const std::function<void(const APoly&)>& fn) {
  const std::size_t count = qpow(f, d);
  std::vector<FqCode> c(d + 1, 0);
  c[d] = 1;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t r = idx;
    for (unsigned i = 0; i < d; ++i) {
      c[i] = FqCode(r % f.q());
      r /= f.q();
    }
    fn(APoly(f, c));
  }
}

GossPolynomial goss_polynomial(const Field& f, unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidIndex, "Goss polynomial index must be positive");
  // table[j] holds G̃_j, j = 0..k
  std::vector<std::vector<RationalFunction>> table(k + 1);
  std::vector<RationalFunction> inv_d;  // 1/d_i
  for (unsigned i = 0; qpow(f, i) <= k; ++i)
    inv_d.push_back(RationalFunction(APoly::constant(f, 1), carlitz_factorial(f, i)));
  table[0] = {};
  for (unsigned n = 1; n <= k; ++n) {
    std::vector<RationalFunction> inner;
    auto acc = [&](const std::vector<RationalFunction>& g, const RationalFunction& s) {
      if (g.size() > inner.size()) inner.resize(g.size(), RationalFunction(f));
      for (std::size_t e = 0; e < g.size(); ++e)
        if (!g[e].is_zero()) inner[e] += g[e] * s;
    };
    if (n == 1) inner = {RationalFunction(APoly::constant(f, 1))};
    acc(table[n - 1], RationalFunction(APoly::constant(f, 1)));
    for (unsigned i = 1; i < inv_d.size(); ++i) {
      std::size_t s = qpow(f, i);
      if (s > n) break;
      acc(table[n - s], inv_d[i]);
    }
    // multiply by X
    std::vector<RationalFunction> g(inner.size() + 1, RationalFunction(f));
    for (std::size_t e = 0; e < inner.size(); ++e) g[e + 1] = inner[e];
    table[n] = std::move(g);
  }
  auto& res = table[k];
  while (!res.empty() && res.back().is_zero()) res.pop_back();
  return {k, res};
}

GossPolynomial goss_polynomial_by_definition(const Field& f, unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidIndex, "Goss polynomial index must be positive");
  const std::size_t L = k;  // y-exponents 0..k-1
  std::vector<RationalFunction> e_hat(L, RationalFunction(f));
  for (unsigned i = 0; qpow(f, i) < L; ++i)
    e_hat[qpow(f, i)] = RationalFunction(APoly::constant(f, 1), carlitz_factorial(f, i));
  std::vector<RationalFunction> coeffs(k + 1, RationalFunction(f));
  std::vector<RationalFunction> power(L, RationalFunction(f));  // ê^j
  power[0] = RationalFunction(APoly::constant(f, 1));
  for (unsigned j = 0; j < k; ++j) {
    coeffs[j + 1] = power[k - 1];
    std::vector<RationalFunction> next(L, RationalFunction(f));
    for (std::size_t a = 0; a < L; ++a) {
      if (power[a].is_zero()) continue;
      for (std::size_t b = 1; a + b < L; ++b)
        if (!e_hat[b].is_zero()) next[a + b] += power[a] * e_hat[b];
    }
    power = std::move(next);
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  return {k, coeffs};
}

}  // namespace dqm
