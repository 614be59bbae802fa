#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "dqm/error.hpp"
#include "dqm/multiplicity.hpp"

using namespace dqm;

namespace {

const Expander& expander(unsigned q) {
  static std::map<unsigned, std::unique_ptr<Expander>> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, std::make_unique<Expander>(Field::get(q), q == 2 ? 70 : 50)).first;
  return *it->second;
}

GradedElement gen(const Field& f, Gen g) { return GradedElement::generator(f, g); }

// smallest D whose expanded system has a kernel vector
unsigned min_kernel_degree(const SiegelSystem& s) {
  const Field& f = *s.field;
  const int d = s.d();
  for (unsigned D = 0;; ++D) {
    const std::size_t cols = s.V() * (D + 1), rows = s.U() * (std::size_t(d) + D + 1);
    std::vector<std::vector<APoly>> M(rows, std::vector<APoly>(cols, APoly(f)));
    for (std::size_t i = 0; i < s.U(); ++i)
      for (std::size_t j = 0; j < s.V(); ++j)
        for (std::size_t e = 0; e < s.a[i][j].t_coeffs().size(); ++e)
          for (std::size_t k = 0; k <= D; ++k) M[i * (d + D + 1) + e + k][j * (D + 1) + k] = s.a[i][j].t_coeff(e);
    if (kernel_vector(M, cols)) return D;
  }
}

}  // namespace

TEST_CASE("siegel: trivial example") {
  const Field& f = Field::get(3);
  SiegelSystem s;
  s.field = &f;
  s.a = {{BPoly::t(f), BPoly::constant(f, 1)}};
  auto sol = siegel_solve(s);
  REQUIRE(sol.x.size() == 2);
  CHECK(sol.x[0] == BPoly::constant(f, 1));
  CHECK(sol.x[1] == -BPoly::t(f));
  CHECK(sol.D == 1);
  CHECK(sol.residual_zero);
  CHECK_THROWS_AS(siegel_solve(SiegelSystem{&f, {{BPoly::t(f)}}}), Error);
}

TEST_CASE("siegel: random systems respect the budget") {
  const Field& f = Field::get(2);
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 20; ++it) {
    const std::size_t U = 1 + rng() % 3, V = 2 * U;
    const unsigned d = 1 + unsigned(rng() % 2);
    SiegelSystem s;
    s.field = &f;
    for (std::size_t i = 0; i < U; ++i) {
      std::vector<BPoly> r;
      for (std::size_t j = 0; j < V; ++j) r.push_back(random_bpoly(f, rng, d));
      s.a.push_back(r);
    }
    auto sol = siegel_solve(s);
    CHECK(sol.residual_zero);
    CHECK(sol.max_deg <= int(siegel_budget(U, V, s.d())));
    CHECK(sol.max_deg <= int(d));
    bool nonzero = false;
    for (const auto& x : sol.x) nonzero |= !x.is_zero();
    CHECK(nonzero);
    CHECK(min_kernel_degree(s) <= sol.D);
  }
}

TEST_CASE("kernel vector over A") {
  const Field& f = Field::get(5);
  APoly th = APoly::theta(f), one = APoly::constant(f, 1);
  // rows (θ, 1, 0), (0, θ, 1)
  std::vector<std::vector<APoly>> m = {{th, one, APoly(f)}, {APoly(f), th, one}};
  auto k = kernel_vector(m, 3);
  REQUIRE(k);
  for (const auto& r : m) {
    APoly s(f);
    for (int j = 0; j < 3; ++j) s += r[j] * (*k)[j];
    CHECK(s.is_zero());
  }
  CHECK_FALSE(kernel_vector({{one, APoly(f)}, {APoly(f), one}}, 2));
}

TEST_CASE("exact logarithm helpers") {
  CHECK(exact::le_c_log(2, 3, 1, 8));
  CHECK_FALSE(exact::le_c_log(2, 4, 1, 8));
  CHECK(exact::le_c_log(3, 0, 5, 1));
  CHECK(kappa(2, 9, 1) == 4);  // 2^16 > 13^4 > 2^8
  CHECK(kappa(3, 20, 2) == 3);
  for (unsigned q : {2u, 3u})
    for (long mu = 5; mu < 40; mu += 7)
      for (long nu = 1; nu <= 3; ++nu) {
        double X = double(mu + nu + q * q - 1);
        double v = std::log(4.0 * nu) / std::log(q) + std::log(std::log(X) / std::log(q)) / std::log(q);
        CHECK(kappa(q, mu, nu) == unsigned(std::floor(v)) + 1);
      }
}

TEST_CASE("reduced forms") {
  const Expander& X = expander(2);
  const Field& f = X.field();
  auto g = gen(f, Gen::G);
  CHECK(is_reduced(X, g, 10));
  CHECK(twist_to_reduce(X, g, 10).first == 0);

  auto tg = g.scaled(BPoly::t_minus_theta_pow(f, 1));
  CHECK_FALSE(is_reduced(X, tg, 10));
  auto [k, tw] = twist_to_reduce(X, tg, 10);
  CHECK(k == 1);
  CHECK(is_reduced(X, tw, 10));

  // b_{n₀} = t^q − θ: the first twist is not enough
  BPoly b = BPoly::t(f).pow(2) - BPoly(APoly::theta(f));
  auto e = g.scaled(b);
  auto [k2, tw2] = twist_to_reduce(X, e, 10);
  CHECK(k2 == 2);
  CHECK_FALSE(is_reduced(X, e.tau(1), 10));
  CHECK(is_reduced(X, tw2, 10));
  CHECK_THROWS_AS(reduced_info(X, GradedElement(f), 5), Error);
}

TEST_CASE("vanishing order bounds") {
  for (unsigned q : {2u, 3u}) {
    const Expander& X = expander(q);
    const Field& f = X.field();
    for (unsigned i = 0; i < 4; ++i)
      for (unsigned j = 0; j < 4; ++j) {
        auto e = gen(f, Gen::G).pow(i) * gen(f, Gen::H).pow(j);
        auto v = nu_bound_check(X, e);
        REQUIRE(v.nu_inf);
        CHECK(*v.nu_inf == j);
        CHECK(v.pass);
        CHECK(v.mode == NuMode::Modular);
      }
    // 𝑬^{(k)} attains ν_∞ = μν
    std::size_t qk = 1;
    for (unsigned k = 0; k <= (q == 2 ? 3u : 2u); ++k, qk *= q) {
      auto e = gen(f, Gen::BoldE).tau(k);
      auto v = nu_bound_check(X, e);
      REQUIRE(v.nu_inf);
      CHECK(*v.nu_inf == qk);
      CHECK(long(*v.nu_inf) == v.degree.mu * v.degree.nu);
      CHECK(v.pass);
    }
  }
  const Expander& X = expander(2);
  std::mt19937_64 rng(31);
  for (int it = 0; it < 200; ++it) {
    long mu = long(rng() % 21), nu = 1 + long(rng() % 3);
    auto e = random_homogeneous(X.field(), mu, nu, 0, rng);
    if (!e) continue;
    CHECK(nu_bound_check(X, *e).pass);
  }
}

TEST_CASE("auxiliary form, q = 2") {
  const Field& f = Field::get(2);
  auto rep = construct_aux(f, 9, 1, 0);
  CHECK(rep.pass());
  CHECK(rep.V == std::size_t(mdag_basis(2, 9, 1, 0).size()));
  CHECK(rep.U == rep.V / 2);
  CHECK(rep.nu_inf_f >= rep.U);
  CHECK(rep.r == 9 * 16 + 1);
  for (const auto& r : rep.ledger) CHECK_MESSAGE(r.pass, r.name);
  CHECK(rep.to_json().dump() == construct_aux(f, 9, 1, 0).to_json().dump());
  try {
    construct_aux(f, 8, 1, 0);
    FAIL("expected ConditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConditionViolated);
  }
  CHECK_THROWS_AS(construct_aux(f, 9, 0, 0), Error);
}

TEST_CASE("auxiliary form, q = 3") {
  const Field& f = Field::get(3);
  AuxOptions o;
  o.direct_expansion = false;
  auto strict = construct_aux(f, 24, 2, 1, o);
  CHECK(strict.hypothesis_met);
  CHECK(strict.pass());
  CHECK_THROWS_AS(construct_aux(f, 20, 2, 1, o), Error);
  o.allow_outside_hypothesis = true;
  auto loose = construct_aux(f, 20, 2, 1, o);
  CHECK_FALSE(loose.hypothesis_met);
  CHECK(loose.pass());
  CHECK(loose.ledger.front().informational);
}

TEST_CASE("theorem checker") {
  const Expander& X = expander(2);
  const Field& f = X.field();
  QuasiModularForm h;
  h.field = &f;
  h.terms.emplace(std::array<unsigned, 3>{0, 1, 0}, RationalFunction(APoly::constant(f, 1)));
  auto v = theorem_check(X, h, 3, 1, 1);
  CHECK(v.nu_inf == 1);
  CHECK(v.pass);
  CHECK_FALSE(v.hypothesis_met);
  CHECK(v.threshold == doctest::Approx(4.0 * std::pow(2.0 * 2 * 4 * 7 + 3 * 5, 1.5)));
  CHECK(v.rhs == 16 * 8 * 49 * 1 * 3);

  for (unsigned l = 1; l <= 3; ++l) {
    QuasiModularForm e;
    e.field = &f;
    e.terms.emplace(std::array<unsigned, 3>{0, 1, l}, RationalFunction(APoly::constant(f, 1)));
    auto r = theorem_check(X, e, 3 + 2 * l, l, 1 + l);
    CHECK(r.nu_inf == l + 1);
    CHECK(r.pass);
  }
  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    long w = long(rng() % 60), l = 1 + long(rng() % 3);
    auto qf = random_quasi_modular(f, w, l, 0, rng);
    if (!qf) continue;
    CHECK(theorem_check(X, *qf, w, l, 0).pass);
  }
}
