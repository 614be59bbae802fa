#include <doctest.h>

#include <cmath>
#include <map>

#include "dqm/deformations.hpp"
#include "dqm/error.hpp"

using namespace dqm;

namespace {

struct Fixture {
  BaseFormSet base;
  DeformationSet def;
};

const Fixture& fixture(unsigned q) {
  static std::map<unsigned, Fixture> cache;
  auto it = cache.find(q);
  if (it == cache.end()) {
    BaseFormSet b = compute_base_forms(Field::get(q), q == 2 ? 120 : 100);
    DeformationSet d = compute_deformations(b);
    it = cache.emplace(q, Fixture{b, d}).first;
  }
  return it->second;
}

BPoly tmt(const Field& f, std::size_t e) { return BPoly::t_minus_theta_pow(f, e); }

// floor(log_b n) for n >= 1, exact
int ilog(std::size_t b, std::size_t n) {
  int k = 0;
  while (n >= b) {
    n /= b;
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("𝒅: constant term, one-step oracle, ideal membership, degree bound") {
  for (unsigned q : {2u, 3u, 5u}) {
    const Field& f = Field::get(q);
    const auto& [b, D] = fixture(q);
    CHECK(D.d.coeff(0) == BPoly::constant(f, 1));
    // c_1 = (t−θ^q)δ_1 + γ_1 = θ − t
    CHECK(D.d.coeff(q - 1) == -tmt(f, 1));
    CHECK(D.d.coeff(q - 1).deg_t() == 1);
    for (std::size_t i = 1; (q - 1) * i < D.d.precision(); ++i) {
      const BPoly& c = D.d.coeff((q - 1) * i);
      CHECK(c.eval_t_at_theta().is_zero());
      // Sharp form: 1 + floor(log_{q²} i). The literal log_{q²} i already fails at i = 1.
      CHECK(c.deg_t() <= 1 + ilog(std::size_t(q) * q, i));
    }
    CHECK(d_residual(D.d, b.g, b.delta).truncated(D.N).is_zero());
  }
  const Field& f = Field::get(3);
  USeries bad = USeries::monomial(f, 10, BPoly::constant(f, 2), 0);
  CHECK_THROWS_AS(compute_d(bad, fixture(3).base.delta, 10), Error);
}

TEST_CASE("𝑬: leading terms, cross-pipeline identity, τ-difference equation, degrees") {
  for (unsigned q : {2u, 3u, 5u}) {
    const Field& f = Field::get(q);
    const auto& [b, D] = fixture(q);
    CAPTURE(q);
    CHECK(D.E.vanishing_order() == 1);
    CHECK(D.E.coeff(1) == BPoly::constant(f, 1));
    if (q >= 3) {
      CHECK(D.E.coeff(1 + (q - 1) * (q - 1)) == BPoly::constant(f, 1));
      CHECK(D.E.coeff(1 + (q - 1) * q) == -tmt(f, 1));
      for (std::size_t n = 2; n < 1 + (q - 1) * q; ++n)
        if (n != 1 + (q - 1) * (q - 1)) CHECK(D.E.coeff(n).is_zero());
    } else {
      CHECK(D.E.coeff(2) == BPoly::constant(f, 1));
      CHECK(D.E.coeff(3) == tmt(f, 1) + BPoly::constant(f, 1));
    }
    CHECK(D.E.specialize_t().agrees_with(b.E));
    CHECK(E_residual(D.E, b.g, b.delta).truncated(D.N).is_zero());
    for (std::size_t n = 1; n < D.E.precision(); ++n) {
      if ((n - 1) % (q - 1)) CHECK(D.E.coeff(n).is_zero());
      CHECK(D.E.coeff(n).deg_t() <= ilog(q, n));
    }
    CHECK(D.F.vanishing_order() == q);
  }
}

TEST_CASE("𝑬^{(k)}: Eq. (26) route equals repeated τ") {
  for (unsigned q : {2u, 3u}) {
    const auto& [b, D] = fixture(q);
    EFamily fam = compute_E_family(b.h, D.d, 3, D.N);
    CHECK(fam.agree);
    std::size_t qk = 1;
    for (unsigned k = 0; k <= 3; ++k, qk *= q) {
      CHECK(fam.via_d[k].vanishing_order() == qk);
      CHECK(fam.via_d[k].agrees_with(fam.via_tau[k], D.N));
    }
  }
  EFamilyBudget bud = e_family_budget(2, 200, 3);
  CHECK(bud.h_prec == 26);
  CHECK(bud.d_prec == 13);
}

TEST_CASE("𝒉 two routes and specialization") {
  for (unsigned q : {2u, 3u, 5u}) {
    const auto& [b, D] = fixture(q);
    CHECK(D.H.vanishing_order() == 1);
    CHECK(D.H.agrees_with(b.h * D.d));
    CHECK(D.H.specialize_t().agrees_with(b.h));
    // ε(𝒅) ≡ 1
    CHECK(D.d.specialize_t().agrees_with(USeries::one(*b.field, D.N)));
  }
}

TEST_CASE("g_k^⋆") {
  for (unsigned q : {2u, 3u}) {
    const Field& f = Field::get(q);
    const auto& [b, D] = fixture(q);
    auto gs = g_star(b.g, b.delta, 4);
    CHECK(gs[0] == USeries::one(f, b.N));
    CHECK(gs[1] == b.g);
    CHECK(gs[2].agrees_with(b.delta.scaled(tmt(f, q)) + b.g.pow(q + 1)));
    // ε(g_2^⋆) = g^{q+1} − [1]Δ
    CHECK(gs[2].specialize_t().agrees_with(b.g.pow(q + 1) - b.delta.scaled(BPoly(bracket(f, 1)))));
  }
}

TEST_CASE("𝝁: convergents, residual, cross-check against 𝒅") {
  for (unsigned q : {2u, 3u}) {
    const Field& f = Field::get(q);
    const auto& [b, D] = fixture(q);
    const std::size_t N = D.N;
    unsigned depth = mu_depth_for(q, N);
    USeries mu = mu_continued_fraction(b.g, b.delta, depth, N);
    CHECK(mu.coeff(0) == tmt(f, 1));
    CHECK(mu_residual(mu, b.g, b.delta).truncated(N).is_zero());
    CHECK(mu.agrees_with((D.d.tau(1) * D.d.inverse()).scaled(tmt(f, 1))));
    // successive convergents agree below q^{j+1} − 1
    for (unsigned j = 0; j + 1 < depth; ++j) {
      std::size_t exact = 1;
      for (unsigned i = 0; i <= j; ++i) exact *= q;
      exact -= 1;
      USeries a = mu_continued_fraction(b.g, b.delta, j, exact);
      USeries c = mu_continued_fraction(b.g, b.delta, j + 1, exact);
      CHECK(a.agrees_with(c, exact));
    }
    CHECK_THROWS_AS(mu_continued_fraction(b.g, b.delta, 1, N), Error);
  }
}
