#include "dqm/deformations.hpp"

#include <algorithm>

#include "dqm/error.hpp"

namespace dqm {

namespace {

std::size_t qpow(std::size_t q, unsigned k) {
  std::size_t r = 1;
  while (k--) r *= q;
  return r;
}

BPoly t_minus(const Field& f, std::size_t e) { return BPoly::t_minus_theta_pow(f, e); }

}  // namespace

USeries compute_d(const USeries& g, const USeries& delta, std::size_t N) {
  const Field& f = g.field();
  const std::size_t q = f.q(), m1 = q - 1;
  const std::size_t P = std::min({N, g.precision(), delta.precision()});
  if (P == 0) return USeries(f, 0);
  const std::size_t M = (P - 1) / m1 + 1;  // v-indices 0..M-1
  std::vector<BPoly> gamma(M, BPoly(f)), dl(M, BPoly(f));
  for (std::size_t i = 0; i < M; ++i) {
    gamma[i] = g.coeff(i * m1);
    dl[i] = delta.coeff(i * m1);
  }
  if (!(gamma[0] == BPoly::constant(f, 1)) || !dl[0].is_zero())
    throw Error(ErrorCode::RecursionInconsistent, "𝒅 recursion needs γ_0 = 1 and δ_0 = 0");
  const BPoly tq = t_minus(f, q);
  std::vector<BPoly> c(M, BPoly(f)), c1(M, BPoly(f)), c2(M, BPoly(f));
  c[0] = BPoly::constant(f, 1);
  c1[0] = c[0];
  c2[0] = c[0];
  for (std::size_t m = 1; m < M; ++m) {
    BPoly s2(f), s1(f);
    for (std::size_t j = 0; j * q * q <= m; ++j) {
      const BPoly& di = dl[m - j * q * q];
      if (!di.is_zero()) s2.add_product(di, c2[j]);
    }
    for (std::size_t j = 0; j * q <= m; ++j) {
      const BPoly& gi = gamma[m - j * q];
      if (!gi.is_zero()) s1.add_product(gi, c1[j]);
    }
    c[m] = tq * s2 + s1;
    c1[m] = c[m].twist(1);
    if (m * q * q <= M) c2[m] = c[m].twist(2);
  }
  USeries d(f, P);
  for (std::size_t m = 0; m < M; ++m) d.set_coeff(m * m1, std::move(c[m]));
  return d;
}

USeries d_residual(const USeries& d, const USeries& g, const USeries& delta) {
  const Field& f = d.field();
  USeries r = d - (delta * d.tau(2)).scaled(t_minus(f, f.q())) - g * d.tau(1);
  return r;
}

EFamilyBudget e_family_budget(unsigned q, std::size_t N, unsigned k) {
  const std::size_t qk = qpow(q, k);
  EFamilyBudget b{N, k, 1, 1};
  // q^k(P_h − 1) + 1 >= N
  b.h_prec = N > 1 ? (N - 1 + qk - 1) / qk + 1 : 1;
  // τ^{k+1}(𝒅) is needed below N − q^k (the valuation of τ^k h)
  const std::size_t need = N > qk ? N - qk : 0;
  b.d_prec = need > 1 ? (need - 1 + qk * q - 1) / (qk * q) + 1 : 1;
  return b;
}

EFamily compute_E_family(const USeries& h, const USeries& d, unsigned k_max, std::size_t N) {
  EFamily out;
  const unsigned q = h.field().q();
  USeries E = (-(h * d.tau(1)));
  for (unsigned k = 0; k <= k_max; ++k) {
    EFamilyBudget b = e_family_budget(q, N, k);
    if (h.precision() < b.h_prec || d.precision() < b.d_prec)
      throw Error(ErrorCode::PrecisionExhausted, "inputs too short for 𝑬^{(" + std::to_string(k) + ")} to u^" +
                                                     std::to_string(N));
    USeries direct = (-(h.truncated(b.h_prec).tau(k) * d.truncated(b.d_prec).tau(k + 1))).truncated(N);
    USeries twisted = E.tau(k).truncated(N);
    out.budgets.push_back(b);
    if (!direct.agrees_with(twisted, std::min({N, direct.precision(), twisted.precision()}))) out.agree = false;
    out.via_d.push_back(std::move(direct));
    out.via_tau.push_back(std::move(twisted));
  }
  return out;
}

USeries compute_h_bold(const USeries& E, const USeries& F, const USeries& g) {
  const Field& f = E.field();
  return F.scaled(t_minus(f, f.q())) - g * E;
}

USeries E_residual(const USeries& E, const USeries& g, const USeries& delta) {
  const Field& f = E.field();
  const std::size_t q = f.q();
  return E.tau(2).scaled(t_minus(f, q * q)) - delta * E - g.tau(1) * E.tau(1);
}

std::vector<USeries> g_star(const USeries& g, const USeries& delta, unsigned k_max) {
  const Field& f = g.field();
  const std::size_t N = std::min(g.precision(), delta.precision());
  std::vector<USeries> out;
  out.push_back(USeries::one(f, N));
  if (k_max >= 1) out.push_back(g.truncated(N));
  for (unsigned k = 2; k <= k_max; ++k) {
    USeries a = (out[k - 2] * delta.tau(k - 2).truncated(N)).scaled(t_minus(f, qpow(f.q(), k - 1)));
    USeries b = out[k - 1] * g.tau(k - 1).truncated(N);
    out.push_back((a + b).truncated(N));
  }
  return out;
}

unsigned mu_depth_for(unsigned q, std::size_t N) {
  unsigned D = 0;
  while (qpow(q, D + 1) - 1 < N) ++D;
  return D;
}

USeries mu_continued_fraction(const USeries& g, const USeries& delta, unsigned depth, std::size_t N) {
  const Field& f = g.field();
  const unsigned q = f.q();
  if (qpow(q, depth + 1) - 1 < N)
    throw Error(ErrorCode::DepthInsufficient, "depth " + std::to_string(depth) + " is exact only below u^" +
                                                  std::to_string(qpow(q, depth + 1) - 1));
  const std::size_t P = std::min({N, g.precision(), delta.precision()});
  USeries T = g.tau(depth).truncated(P);
  for (unsigned j = depth; j-- > 0;) {
    USeries num = delta.tau(j).truncated(P).scaled(t_minus(f, qpow(q, j + 1)));
    T = (g.tau(j).truncated(P) + num * T.inverse()).truncated(P);
  }
  return T.inverse().scaled(t_minus(f, 1)).truncated(P);
}

USeries mu_residual(const USeries& mu, const USeries& g, const USeries& delta) {
  const Field& f = g.field();
  USeries r = mu * (g + delta * mu.tau(1));
  return r - USeries::monomial(f, r.precision(), t_minus(f, 1), 0);
}

DeformationSet compute_deformations(const BaseFormSet& base) {
  const Field& f = *base.field;
  const std::size_t N = base.N;
  USeries d = compute_d(base.g, base.delta, N);
  USeries E = (-(base.h * d.tau(1))).truncated(N);
  USeries F = E.tau(1).truncated(N);
  USeries H = compute_h_bold(E, F, base.g).truncated(N);
  (void)f;
  return {base.field, N, d, E, F, H};
}

}  // namespace dqm
