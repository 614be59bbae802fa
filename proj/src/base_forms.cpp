#include "dqm/base_forms.hpp"

#include <map>

#include "dqm/carlitz.hpp"
#include "dqm/error.hpp"

namespace dqm {

namespace {

std::size_t qpow(const Field& f, unsigned d) {
  std::size_t r = 1;
  for (unsigned i = 0; i < d; ++i) r *= f.q();
  return r;
}

void gate(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::NormalizationGateFailed, what);
}

BPoly cst(const Field& f, long long n) { return BPoly::constant(f, f.from_int(n)); }

// Coefficient of v^i, i.e. of u^{(q−1)i + shift}; zero past the precision is
// never consulted by callers.
const BPoly& vcoeff(const USeries& s, std::size_t i, std::size_t shift = 0) {
  return s.coeff((s.field().q() - 1) * i + shift);
}

bool supported_on(const USeries& s, std::size_t residue) {
  const std::size_t m = s.field().q() - 1;
  for (std::size_t n = 0; n < s.precision(); ++n)
    if (n % m != residue % m && !s.coeff(n).is_zero()) return false;
  return true;
}

}  // namespace

RationalFunction zeta_hat(const Field& f, unsigned k) {
  const unsigned q1 = f.q() - 1;
  if (k == 0 || k % q1) throw Error(ErrorCode::InvalidArgument, "zeta_hat needs a positive multiple of q−1");
  // b = 1/(ê(w)/w) with ê(w)/w = Σ_i w^{q^i − 1}/d_i
  std::vector<RationalFunction> b(k + 1, RationalFunction(f));
  b[0] = RationalFunction(APoly::constant(f, 1));
  std::vector<std::pair<std::size_t, RationalFunction>> terms;
  for (unsigned i = 1; qpow(f, i) - 1 <= k; ++i)
    terms.push_back({qpow(f, i) - 1, RationalFunction(APoly::constant(f, 1), carlitz_factorial(f, i))});
  for (std::size_t n = 1; n <= k; ++n) {
    RationalFunction acc(f);
    for (const auto& [s, c] : terms) {
      if (s > n) break;
      if (!b[n - s].is_zero()) acc += c * b[n - s];
    }
    b[n] = -acc;
  }
  return b[k];
}

KSeries eisenstein_stripped(const Field& f, unsigned k, std::size_t N) {
  const unsigned q = f.q();
  if (k != q - 1 && k != q * q - 1) throw Error(ErrorCode::InvalidArgument, "Eisenstein weight must be q−1 or q²−1");
  if (N == 0) throw Error(ErrorCode::PrecisionExhausted, "zero precision");
  GossPolynomial G = goss_polynomial(f, k);
  KSeries sum(USeries(f, N));
  for (unsigned j = 1; j < G.coeffs.size(); ++j) {
    const RationalFunction& c = G.coeffs[j];
    if (c.is_zero()) continue;
    USeries S(f, N);
    for (unsigned d = 0; std::size_t(j) * qpow(f, d) < N; ++d)
      for_each_monic(f, d, [&](const APoly& a) { S += u_sub_a_power(a, j, N); });
    sum = sum + KSeries(S).scaled(c);
  }
  RationalFunction z = zeta_hat(f, k);
  KSeries zs(USeries::monomial(f, N, BPoly(z.num()), 0), z.den());
  return -(zs + sum);
}

GDelta derive_g_delta(const Field& f, std::size_t N) {
  const unsigned q = f.q();
  KSeries a1 = eisenstein_stripped(f, q - 1, N);
  KSeries e2 = eisenstein_stripped(f, q * q - 1, N);
  KSeries a1q = a1.tau(1).truncated(N);
  // â_1^{q+1} = τ(â_1)·â_1 since the coefficients lie in K
  KSeries a1pow = a1q * a1;
  KSeries a2 = (q % 2 == 1) ? e2 + a1pow : e2 - a1pow;  // (−1)^{q+1}
  KSeries gk = a1.scaled(RationalFunction(bracket(f, 1)));
  KSeries dk = a2.scaled(RationalFunction(bracket(f, 2))) - gk * a1q;
  gate(gk.is_integral(), "g has non-integral coefficients");
  gate(dk.is_integral(), "Δ has non-integral coefficients");
  USeries g = gk.to_integral().truncated(N), delta = dk.to_integral().truncated(N);

  gate(g.coeff(0) == cst(f, 1), "g constant term is not 1");
  if (q - 1 < N) gate(vcoeff(g, 1) == BPoly(-bracket(f, 1)), "g ≢ 1 − [1]v mod v²");
  gate(delta.coeff(0).is_zero(), "Δ has a constant term");
  if (q - 1 < N) gate(vcoeff(delta, 1) == cst(f, -1), "Δ ≢ −v mod v²");
  for (std::size_t i = 2; i <= q && (q - 1) * i < N; ++i)
    gate(vcoeff(delta, i) == (i == q ? cst(f, 1) : BPoly(f)), "Δ ≢ −v(1 − v^{q−1}) mod v^{q+1}");
  gate(supported_on(g, 0) && supported_on(delta, 0), "g or Δ not supported on u^{0 mod q−1}");
  return {g, delta, a1, a2};
}

USeries derive_h(const USeries& delta) {
  const Field& f = delta.field();
  const std::size_t q = f.q(), m = q - 1;
  const std::size_t P = delta.precision();
  if (P < q) throw Error(ErrorCode::PrecisionExhausted, "Δ precision too small to extract h");
  const std::size_t Ph = P - q + 2;
  // U = −Δ/v, U_i = −δ_{i+1}
  const std::size_t nU = (P - 1) / m;  // U_i known for (i+1)m < P, i.e. i < nU
  std::vector<BPoly> U(nU, BPoly(f));
  for (std::size_t i = 0; i < nU; ++i) U[i] = -delta.coeff((i + 1) * m);
  for (std::size_t n = 1; n < m; ++n)
    if (!delta.coeff(n).is_zero()) throw Error(ErrorCode::RootObstruction, "Δ not supported on v-powers");
  if (!delta.coeff(0).is_zero() || nU == 0 || !(U[0] == BPoly::constant(f, 1)))
    throw Error(ErrorCode::RootObstruction, "−Δ/v is not ≡ 1 mod v");
  // τ(w) = U·w solved order by order
  std::vector<BPoly> w(nU, BPoly(f));
  w[0] = BPoly::constant(f, 1);
  for (std::size_t n = 1; n < nU; ++n) {
    BPoly acc(f);
    if (n % q == 0) acc = w[n / q].twist(1);
    for (std::size_t i = 1; i <= n; ++i)
      if (!U[i].is_zero() && !w[n - i].is_zero()) acc -= U[i] * w[n - i];
    w[n] = std::move(acc);
  }
  USeries h(f, Ph);
  for (std::size_t n = 0; n < nU && 1 + m * n < Ph; ++n) h.set_coeff(1 + m * n, -w[n]);
  return h;
}

USeries derive_E(const Field& f, std::size_t N) {
  USeries E(f, N);
  for (unsigned d = 0; qpow(f, d) < N; ++d)
    for_each_monic(f, d, [&](const APoly& a) { E += u_sub_a(a, N).scaled(BPoly(a)); });
  return E;
}

std::vector<KSeries> normalized_exp_coeffs(const USeries& g, const USeries& delta, unsigned i_max) {
  const Field& f = g.field();
  const std::size_t N = std::min(g.precision(), delta.precision());
  std::vector<USeries> P;
  std::vector<KSeries> out;
  P.push_back(USeries::one(f, N));
  out.emplace_back(P[0], APoly::constant(f, 1));
  for (unsigned i = 1; i <= i_max; ++i) {
    USeries next = (g * P[i - 1].tau(1)).truncated(N);
    if (i >= 2) next += (delta * P[i - 2].tau(2)).scaled(BPoly(bracket(f, i - 1).twist(1))).truncated(N);
    P.push_back(next.truncated(N));
    out.emplace_back(P.back(), carlitz_factorial(f, i));
  }
  return out;
}

BaseFormSet compute_base_forms(const Field& f, std::size_t N) {
  if (N < 2) throw Error(ErrorCode::PrecisionExhausted, "base forms need N >= 2");
  const std::size_t q = f.q();
  GDelta gd = derive_g_delta(f, N + q);
  USeries h = derive_h(gd.delta).truncated(N);
  USeries E = derive_E(f, N);
  USeries g = gd.g.truncated(N), delta = gd.delta.truncated(N);
  gate(h.precision() == N, "h precision");
  gate((-h.pow(unsigned(q - 1))).agrees_with(delta, N), "Δ ≠ −h^{q−1}");
  gate(supported_on(h, 1) && supported_on(E, 1), "h or E not supported on u^{1 mod q−1}");
  gate(h.coeff(1) == cst(f, -1) && E.coeff(1) == cst(f, 1), "h or E leading term");
  return {&f, N, g, delta, h, E};
}

}  // namespace dqm
