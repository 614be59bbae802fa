#include <doctest.h>

#include <random>

#include "dqm/error.hpp"
#include "dqm/series_json.hpp"
#include "dqm/useries.hpp"

using namespace dqm;

namespace {

USeries rand_series(std::mt19937_64& rng, const Field& f, std::size_t prec, std::size_t maxdt) {
  std::vector<BPoly> cs;
  for (std::size_t n = 0; n < prec; ++n) {
    if (rng() % 3 == 0) {
      cs.emplace_back(f);
      continue;
    }
    std::vector<Monom> ms;
    for (int k = 0; k < 3; ++k) ms.push_back({FqCode(rng() % f.q()), rng() % (maxdt + 1), rng() % 6});
    cs.push_back(BPoly::from_monomials(f, ms));
  }
  return USeries(f, prec, cs);
}

USeries poly_series(const Field& f, std::size_t prec, std::vector<int> c) {
  std::vector<BPoly> cs;
  for (int x : c) cs.push_back(BPoly::constant(f, f.from_int(x)));
  return USeries(f, prec, cs);
}

}  // namespace

TEST_CASE("series arithmetic examples") {
  const Field& f2 = Field::get(2);
  USeries a = poly_series(f2, 3, {1, 1});
  USeries b = poly_series(f2, 5, {1, 0, 1});
  USeries ab = a * b;
  CHECK(ab.precision() == 3);
  CHECK(ab == poly_series(f2, 3, {1, 1, 1}));

  const Field& f5 = Field::get(5);
  CHECK(poly_series(f5, 10, {1, 1}) * poly_series(f5, 10, {1, -1}) == poly_series(f5, 10, {1, 0, -1}));
  // 1/(1+v) with q = 5, v = u^4
  USeries one_plus_v = poly_series(f5, 13, {1, 0, 0, 0, 1});
  CHECK(one_plus_v.inverse() == poly_series(f5, 13, {1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, -1}));
  CHECK_THROWS_AS(poly_series(f5, 5, {0, 1}).inverse(), Error);
  USeries theta_const(f5, 4, {BPoly(APoly::theta(f5))});
  CHECK_THROWS_AS(theta_const.inverse(), Error);
}

TEST_CASE("tau on series") {
  const Field& f2 = Field::get(2);
  USeries u = USeries::monomial(f2, 10, BPoly::constant(f2, 1), 1);
  USeries tu = u.tau(1);
  CHECK(tu.precision() == 19);
  CHECK(tu.vanishing_order() == 2);
  CHECK(USeries::one(f2, 5).tau(1).agrees_with(USeries::one(f2, 9)));
  BPoly t_minus_theta = BPoly::t_minus_theta_pow(f2, 1);
  USeries s = USeries::monomial(f2, 4, t_minus_theta, 1);
  USeries ts = s.tau(1);
  CHECK(ts.coeff(2) == BPoly::t_minus_theta_pow(f2, 2));
  CHECK(ts.precision() == 7);
}

TEST_CASE("vanishing order and specialization") {
  const Field& f3 = Field::get(3);
  USeries s = poly_series(f3, 8, {0, 0, 0, 1, 1});
  CHECK(s.vanishing_order() == 3);
  try {
    USeries(f3, 6).vanishing_order();
    FAIL("expected ZeroToPrecision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroToPrecision);
    CHECK(e.precision() == 6);
  }
  // ε(t²u + θu²) = θ²u + θu²
  BPoly t2 = BPoly::t(f3) * BPoly::t(f3);
  USeries x(f3, 4, {BPoly(f3), t2, BPoly(APoly::theta(f3))});
  USeries ex = x.specialize_t();
  CHECK(ex.coeff(1) == BPoly(APoly::monomial(f3, 1, 2)));
  CHECK(ex.coeff(2) == BPoly(APoly::theta(f3)));
  CHECK(ex.domain() == CoeffDomain::A);
  CHECK(x.domain() == CoeffDomain::AT);
  CHECK((x.scaled(BPoly::t_minus_theta_pow(f3, 1))).specialize_t().is_zero());
  auto prof = x.deg_t_profile();
  CHECK(prof[0] == kDegNegInf);
  CHECK(prof[1] == 2);
  CHECK(prof[2] == 0);
}

TEST_CASE("random ring axioms, tau endomorphism, epsilon homomorphism") {
  std::mt19937_64 rng(5);
  for (unsigned q : {2u, 3u, 4u}) {
    const Field& f = Field::get(q);
    for (int it = 0; it < 15; ++it) {
      USeries a = rand_series(rng, f, 20, 2), b = rand_series(rng, f, 18, 2), c = rand_series(rng, f, 22, 1);
      CHECK(((a * b) * c).agrees_with(a * (b * c)));
      CHECK((a * (b + c)).agrees_with(a * b + a * c));
      CHECK((a * b).tau(1).agrees_with(a.tau(1) * b.tau(1)));
      CHECK((a * b).specialize_t().agrees_with(a.specialize_t() * b.specialize_t()));
      // ε∘τ: the twisted series specialized equals twisting then substituting t = θ^q back
      USeries lhs = a.tau(1).specialize_t();
      CHECK(lhs.precision() == a.tau(1).precision());
      auto va = a.valuation(), vb = b.valuation();
      if (va && vb) {
        CHECK((a * b).vanishing_order() == *va + *vb);
      }
    }
  }
}

TEST_CASE("canonical JSON round trip is bit exact") {
  std::mt19937_64 rng(9);
  for (unsigned q : {2u, 3u, 9u}) {
    const Field& f = Field::get(q);
    USeries a = rand_series(rng, f, 15, 3);
    std::string s1 = series_to_canonical(a);
    USeries b = series_from_json(nlohmann::json::parse(s1));
    CHECK(b == a);
    CHECK(series_to_canonical(b) == s1);
  }
  const Field& f2 = Field::get(2);
  USeries u = USeries::monomial(f2, 3, BPoly::t(f2), 1);
  CHECK(series_to_canonical(u) == R"({"coeffs":[[1,[[1,1,0]]]],"prec":3,"q":2,"var":"u"})");
}
