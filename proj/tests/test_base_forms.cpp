#include <doctest.h>

#include "dqm/base_forms.hpp"
#include "dqm/carlitz.hpp"
#include "dqm/error.hpp"

using namespace dqm;

namespace {

RationalFunction one(const Field& f) { return RationalFunction(APoly::constant(f, 1)); }

// Brute-force ζ̂ by a Neumann series 1/(1+x) = Σ (−x)^j on K[[w]].
RationalFunction zeta_oracle(const Field& f, unsigned k) {
  std::vector<RationalFunction> x(k + 1, RationalFunction(f));
  std::size_t qi = f.q();
  for (unsigned i = 1; qi - 1 <= k; ++i, qi *= f.q())
    x[qi - 1] = RationalFunction(APoly::constant(f, 1), carlitz_factorial(f, i));
  std::vector<RationalFunction> term(k + 1, RationalFunction(f)), sum(k + 1, RationalFunction(f));
  term[0] = one(f);
  for (unsigned j = 0; j <= k; ++j) {
    for (unsigned n = 0; n <= k; ++n) sum[n] += term[n];
    std::vector<RationalFunction> next(k + 1, RationalFunction(f));
    for (unsigned a = 0; a <= k; ++a)
      for (unsigned b = 1; a + b <= k; ++b)
        if (!term[a].is_zero() && !x[b].is_zero()) next[a + b] -= term[a] * x[b];
    term = next;
  }
  return sum[k];
}

// Ê_k by a slow independent route: u_a via generic inversion, Goss
// polynomial via its definition, K-coefficient arithmetic throughout.
std::vector<RationalFunction> eisenstein_oracle(const Field& f, unsigned k, std::size_t N) {
  GossPolynomial G = goss_polynomial_by_definition(f, k);
  std::vector<RationalFunction> out(N, RationalFunction(f));
  out[0] = -zeta_oracle(f, k);
  std::size_t qd = 1;
  for (unsigned d = 0; qd < N; ++d, qd *= f.q()) {
    for_each_monic(f, d, [&](const APoly& a) {
      AdditivePolynomial phi = carlitz_action(a);
      USeries fa(f, N);
      std::size_t qi = 1;
      for (const auto& c : phi.coeffs()) {
        fa.set_coeff(qd - qi, BPoly(c));
        qi *= f.q();
      }
      USeries ua = fa.inverse().shifted(qd).truncated(N);
      USeries pw = USeries::one(f, N);
      for (unsigned j = 1; j < G.coeffs.size(); ++j) {
        pw = (pw * ua).truncated(N);
        if (G.coeffs[j].is_zero()) continue;
        for (std::size_t n = 0; n < N; ++n)
          if (!pw.coeff(n).is_zero()) out[n] -= G.coeffs[j] * RationalFunction(pw.coeff(n).t_coeff(0));
      }
    });
  }
  return out;
}

}  // namespace

TEST_CASE("zeta_hat") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const Field& f = Field::get(q);
    CHECK(zeta_hat(f, q - 1) == -RationalFunction(APoly::constant(f, 1), bracket(f, 1)));
    for (unsigned k = q - 1; k <= q * q + q; k += q - 1) CHECK(zeta_hat(f, k) == zeta_oracle(f, k));
  }
  const Field& f2 = Field::get(2);
  CHECK(zeta_hat(f2, 3) == RationalFunction(APoly::constant(f2, 1), bracket(f2, 1) * bracket(f2, 2)));
  CHECK_THROWS_AS(zeta_hat(Field::get(3), 3), Error);
}

TEST_CASE("stripped Eisenstein series agree with the slow oracle") {
  for (unsigned q : {2u, 3u}) {
    const Field& f = Field::get(q);
    const std::size_t N = q == 2 ? 24 : 30;
    for (unsigned k : {q - 1, q * q - 1}) {
      KSeries E = eisenstein_stripped(f, k, N);
      auto want = eisenstein_oracle(f, k, N);
      for (std::size_t n = 0; n < N; ++n) {
        CAPTURE(q);
        CAPTURE(k);
        CAPTURE(n);
        CHECK(E.coeff_t_free(n) == want[n]);
      }
    }
    KSeries E1 = eisenstein_stripped(f, q - 1, N);
    CHECK(E1.coeff_t_free(0) == RationalFunction(APoly::constant(f, 1), bracket(f, 1)));
    CHECK(E1.coeff_t_free(q - 1) == -one(f));
  }
}

TEST_CASE("g and Δ anchors") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const Field& f = Field::get(q);
    CAPTURE(q);
    GDelta gd = derive_g_delta(f, 6 * q * q);
    CHECK(gd.g.coeff(0) == BPoly::constant(f, 1));
    CHECK(gd.g.coeff(q - 1) == BPoly(-bracket(f, 1)));
    CHECK(gd.delta.vanishing_order() == q - 1);
    CHECK(gd.delta.coeff(q - 1) == BPoly::constant(f, f.from_int(-1)));
    CHECK(gd.a2.coeff_t_free(0) == RationalFunction(APoly::constant(f, 1), carlitz_factorial(f, 2)));
    // Round trip through the forward recursion
    auto a = normalized_exp_coeffs(gd.g, gd.delta, 3);
    CHECK(a[0].coeff_t_free(0) == one(f));
    CHECK(a[1].num().agrees_with(gd.a1.num()));
    CHECK(a[1].den() == gd.a1.den());
    CHECK(a[2].num().agrees_with(gd.a2.num()));
    CHECK(a[2].den() == gd.a2.den());
    CHECK(a[3].coeff_t_free(0) == RationalFunction(APoly::constant(f, 1), carlitz_factorial(f, 3)));
  }
}

TEST_CASE("E examples") {
  const Field& f2 = Field::get(2);
  USeries E = derive_E(f2, 4);
  CHECK(E == USeries(f2, 4, {BPoly(f2), BPoly::constant(f2, 1), BPoly::constant(f2, 1), BPoly::constant(f2, 1)}));
  for (unsigned q : {3u, 5u}) {
    const Field& f = Field::get(q);
    USeries Eq = derive_E(f, 40);
    CHECK(Eq.coeff(1) == BPoly::constant(f, 1));
    CHECK(Eq.coeff(q).is_zero());
    CHECK(Eq.coeff(1 + (q - 1) * (q - 1)) == BPoly::constant(f, 1));
  }
}

TEST_CASE("h from Δ") {
  for (unsigned q : {2u, 3u, 5u}) {
    const Field& f = Field::get(q);
    CAPTURE(q);
    GDelta gd = derive_g_delta(f, 80);
    USeries h = derive_h(gd.delta);
    CHECK(h.precision() == 80 - q + 2);
    CHECK(h.vanishing_order() == 1);
    CHECK(h.coeff(1) == BPoly::constant(f, f.from_int(-1)));
    // w ≡ 1 + v^{q−1}
    CHECK(h.coeff(1 + (q - 1) * (q - 1)) == BPoly::constant(f, f.from_int(-1)));
    for (std::size_t n = 2; n < 1 + (q - 1) * (q - 1); ++n) CHECK(h.coeff(n).is_zero());
    CHECK((-h.pow(q - 1)).agrees_with(gd.delta));
  }
  const Field& f3 = Field::get(3);
  USeries bad = USeries::monomial(f3, 10, BPoly::constant(f3, 1), 2);
  try {
    derive_h(bad);
    FAIL("expected RootObstruction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RootObstruction);
  }
}

TEST_CASE("base form set invariants") {
  for (unsigned q : {2u, 3u, 4u}) {
    const Field& f = Field::get(q);
    BaseFormSet b = compute_base_forms(f, 60);
    CHECK(b.g.domain() == CoeffDomain::A);
    CHECK(b.g.vanishing_order() == 0);
    CHECK(b.h.vanishing_order() == 1);
    CHECK(b.delta.vanishing_order() == q - 1);
    CHECK(b.E.vanishing_order() == 1);
    CHECK(b.h.precision() == 60);
  }
}
