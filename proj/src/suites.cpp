#include "dqm/suites.hpp"

#include <algorithm>
#include <random>

#include "dqm/error.hpp"
#include "dqm/multiplicity.hpp"
#include "dqm/series_json.hpp"

namespace dqm {

namespace {

void violate(SuiteResult& r, nlohmann::json ce) {
  ++r.violations;
  r.pass = false;
  if (r.counterexample.is_null()) r.counterexample = std::move(ce);
}

void expect(SuiteResult& r, bool ok, const nlohmann::json& ce) {
  ++r.checked;
  if (!ok) violate(r, ce);
}

std::size_t qpow(std::size_t q, unsigned k) {
  std::size_t r = 1;
  while (k--) r *= q;
  return r;
}

unsigned types_of(unsigned q) { return q == 2 ? 1 : q - 1; }

BPoly bconst(const Field& f, long c) { return BPoly::constant(f, f.from_int(c)); }

// deg ≤ log_b n for deg ≥ 0, n ≥ 1, exact
bool deg_le_log(std::size_t b, int deg, std::size_t n) {
  unsigned long long p = 1;
  for (int i = 0; i < deg; ++i) {
    p *= b;
    if (p > n) return false;
  }
  return p <= n;
}

int ilog(std::size_t b, std::size_t n) {
  int k = 0;
  while (n >= b) {
    n /= b;
    ++k;
  }
  return k;
}

// series with the first k coefficients removed (they must vanish)
USeries shift_down(const USeries& s, std::size_t k) {
  std::vector<BPoly> c(s.coeffs().begin() + std::ptrdiff_t(k), s.coeffs().end());
  return USeries(s.field(), s.precision() - k, std::move(c));
}

}  // namespace

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["pass"] = pass;
  j["checked"] = checked;
  j["violations"] = violations;
  j["counterexample"] = counterexample;
  j["details"] = details;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = {"anchors", "cross",   "tau-eq",    "deg-bounds", "dims",      "mdag",
                                             "riemannroch", "epsilon", "nu-bounds", "siegel",     "resultant", "theorem"};
  return n;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "anchors") return suite_anchors(cfg);
  if (name == "cross") return suite_cross(cfg);
  if (name == "tau-eq") return suite_tau_eq(cfg);
  if (name == "deg-bounds") return suite_deg_bounds(cfg);
  if (name == "dims") return suite_dims(cfg);
  if (name == "mdag") return suite_mdag(cfg);
  if (name == "riemannroch") return suite_riemannroch(cfg);
  if (name == "epsilon") return suite_epsilon(cfg);
  if (name == "nu-bounds") return suite_nu_bounds(cfg);
  if (name == "siegel") return suite_siegel(cfg);
  if (name == "resultant") return suite_resultant(cfg);
  if (name == "theorem") return suite_theorem(cfg);
  throw Error(ErrorCode::InvalidArgument, "unknown suite " + name);
}

// ---------------------------------------------------------------------------

SuiteResult suite_anchors(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "anchors";
  const Field& f = Field::get(cfg.q);
  const std::size_t q = cfg.q, q1 = q - 1;
  BaseFormSet b = compute_base_forms(f, cfg.N);
  // g ≡ 1 − [1]v mod v²
  for (std::size_t n = 0; n < 2 * q1 && n < b.g.precision(); ++n) {
    BPoly want = n == 0 ? bconst(f, 1) : n == q1 ? -BPoly(bracket(f, 1)) : BPoly(f);
    expect(r, b.g.coeff(n) == want, {{"form", "g"}, {"n", n}});
  }
  // Δ ≡ −v(1 − v^{q−1}) mod v^{q+1}
  for (std::size_t n = 0; n < (q + 1) * q1 && n < b.delta.precision(); ++n) {
    BPoly want = n == q1 ? bconst(f, -1) : n == q * q1 ? bconst(f, 1) : BPoly(f);
    expect(r, b.delta.coeff(n) == want, {{"form", "delta"}, {"n", n}});
  }
  // Δ = −h^{q−1}
  USeries mh = -(b.h.pow(unsigned(q1)));
  const std::size_t P = std::min(mh.precision(), b.delta.precision());
  for (std::size_t n = 0; n < P; ++n)
    expect(r, mh.coeff(n) == b.delta.coeff(n), {{"form", "delta = -h^(q-1)"}, {"n", n}});
  // E ≡ u(1 + v^{q−1}) up to the next support point
  const std::size_t s = 1 + q1 * q1;
  for (std::size_t n = 0; n <= s && n < b.E.precision(); ++n) {
    BPoly want = (n == 1 || n == s) ? bconst(f, 1) : BPoly(f);
    expect(r, b.E.coeff(n) == want, {{"form", "E"}, {"n", n}});
  }
  r.details["precision"] = cfg.N;
  return r;
}

SuiteResult suite_cross(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "cross";
  const Field& f = Field::get(cfg.q);
  BaseFormSet b = compute_base_forms(f, cfg.N);
  DeformationSet d = compute_deformations(b);
  USeries eps = d.E.specialize_t();
  const std::size_t P = std::min({cfg.N, eps.precision(), b.E.precision()});
  for (std::size_t n = 0; n < P; ++n) expect(r, eps.coeff(n) == b.E.coeff(n), {{"n", n}});
  r.details["compared"] = P;
  return r;
}

SuiteResult suite_tau_eq(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "tau-eq";
  const Field& f = Field::get(cfg.q);
  BaseFormSet b = compute_base_forms(f, cfg.N);
  DeformationSet d = compute_deformations(b);
  auto zero_series = [&](const char* what, const USeries& s) {
    auto v = s.valuation();
    expect(r, !v, {{"identity", what}, {"n", v ? long(*v) : -1}});
  };
  zero_series("d recursion", d_residual(d.d, b.g, b.delta));
  zero_series("E difference equation", E_residual(d.E, b.g, b.delta));
  USeries H2 = (b.h * d.d).truncated(cfg.N);
  zero_series("hbold two routes", (d.H - H2).truncated(std::min(d.H.precision(), H2.precision())));
  EFamily fam = compute_E_family(b.h, d.d, cfg.k_max, cfg.N);
  for (unsigned k = 0; k <= cfg.k_max; ++k) {
    const USeries& x = fam.via_d[k];
    const USeries& y = fam.via_tau[k];
    const std::size_t P = std::min({x.precision(), y.precision(), cfg.N});
    expect(r, x.agrees_with(y, P), {{"identity", "E^(k) two routes"}, {"k", k}});
  }
  unsigned depth = mu_depth_for(cfg.q, cfg.N);
  zero_series("mu continued fraction", mu_residual(mu_continued_fraction(b.g, b.delta, depth, cfg.N), b.g, b.delta));
  r.details["precision"] = cfg.N;
  r.details["k_max"] = cfg.k_max;
  return r;
}

SuiteResult suite_deg_bounds(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "deg-bounds";
  const Field& f = Field::get(cfg.q);
  const std::size_t q = cfg.q;
  BaseFormSet b = compute_base_forms(f, cfg.N);
  DeformationSet d = compute_deformations(b);
  long e_checked = 0, d_checked = 0, literal = 0;
  nlohmann::json first_literal;
  for (std::size_t n = 1; n < std::min(cfg.N, d.E.precision()); ++n) {
    int dg = d.E.coeff(n).deg_t();
    if (dg < 0) continue;
    ++e_checked;
    expect(r, deg_le_log(q, dg, n), {{"series", "E"}, {"n", n}, {"deg_t", dg}});
  }
  const std::size_t q1 = q - 1;
  for (std::size_t i = 1; i * q1 < std::min(cfg.N, d.d.precision()); ++i) {
    const BPoly& c = d.d.coeff(i * q1);
    if (c.is_zero()) continue;
    ++d_checked;
    expect(r, c.eval_t_at_theta().is_zero(), {{"series", "d"}, {"i", i}, {"check", "(t-theta) divides"}});
    const int dg = c.deg_t();
    expect(r, dg <= 1 + ilog(q * q, i), {{"series", "d"}, {"i", i}, {"deg_t", dg}, {"check", "1 + floor(log_{q^2} i)"}});
    if (!deg_le_log(q * q, dg, i)) {
      ++literal;
      if (first_literal.is_null()) first_literal = {{"i", i}, {"deg_t", dg}};
    }
  }
  r.details["E_coefficients"] = e_checked;
  r.details["d_coefficients"] = d_checked;
  r.details["literal_d_violations"] = literal;
  r.details["literal_d_first"] = first_literal;
  return r;
}

SuiteResult suite_dims(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "dims";
  DimensionReport rep = dimension_report(cfg.q, cfg.mu_max, cfg.nu_max);
  long compatible = 0;
  for (const auto& row : rep.rows) {
    if (row.applicable && row.compatible) ++compatible;
    expect(r, row.pass(), {{"mu", row.mu}, {"nu", row.nu}, {"m", row.m}, {"dim", row.dim},
                           {"sigma", row.sigma()}});
  }
  r.checked += rep.classical_checked;
  if (rep.classical_mismatches) {
    r.violations += rep.classical_mismatches;
    r.pass = false;
  }
  r.details["rows"] = rep.rows.size();
  r.details["sandwich_rows"] = compatible;
  r.details["classical_checked"] = rep.classical_checked;
  return r;
}

SuiteResult suite_mdag(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "mdag";
  const unsigned q = cfg.q;
  const long Q = long(q) * q - 1;
  for (long nu = 0; nu <= cfg.nu_max; ++nu)
    for (long mu = long(q + 1) * nu; mu <= cfg.mu_max; ++mu)
      for (unsigned m = 0; m < types_of(q); ++m) {
        std::vector<Monomial> basis;
        try {
          basis = mdag_basis(q, mu, nu, m);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::EmptySpace) throw;
        }
        long brute = 0;
        for (long c = 0; c <= nu; ++c)
          for (long b = 0; long(q + 1) * b <= mu; ++b)
            for (long a = 0; long(q - 1) * a <= mu; ++a) {
              const long e = nu - c;
              if (long(q - 1) * a + long(q + 1) * b + c + long(q) * e == mu &&
                  canonical_type(q, b + c + e) == m)
                ++brute;
            }
        nlohmann::json ce = {{"mu", mu}, {"nu", nu}, {"m", m}, {"V", basis.size()}, {"brute", brute}};
        expect(r, long(basis.size()) == brute, ce);
        for (const auto& x : basis) expect(r, monomial_degree(q, x) == GDegree{mu, nu, m}, ce);
        if (degree_compatible(q, mu, nu, m) && 2 * mu > nu * long(q + 1) + 2 * Q) expect(r, !basis.empty(), ce);
      }
  return r;
}

SuiteResult suite_riemannroch(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "riemannroch";
  const unsigned q = cfg.q;
  for (long k = 0; k <= cfg.mu_max; ++k)
    for (unsigned m = 0; m < types_of(q); ++m) {
      long brute = 0;
      for (long b = 0; long(q + 1) * b <= k; ++b)
        for (long a = 0; long(q - 1) * a <= k; ++a)
          if (long(q - 1) * a + long(q + 1) * b == k && canonical_type(q, b) == m) ++brute;
      expect(r, brute == classical_dim_formula(q, k, m),
             {{"k", k}, {"m", m}, {"enumerated", brute}, {"formula", classical_dim_formula(q, k, m)}});
    }
  return r;
}

SuiteResult suite_epsilon(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "epsilon";
  const Field& f = Field::get(cfg.q);
  const unsigned q = cfg.q;
  Expander X(f, std::min<std::size_t>(cfg.N, 60));
  std::mt19937_64 rng(cfg.seed);
  const long samples = std::min<long>(cfg.samples, 60);
  const BPoly tt = BPoly::t_minus_theta_pow(f, 1);
  for (long it = 0; it < samples; ++it) {
    long mu = 2 + long(rng() % 12), nu = long(rng() % 3), m = long(rng() % (q - 1));
    auto e0 = random_homogeneous(f, mu, nu, m, rng);
    if (!e0) continue;
    GradedElement e = it % 4 == 0 ? e0->tau() : *e0;
    nlohmann::json ce = {{"element", element_to_json(e)}};
    APoly D(f);
    USeries rhs = X.expand_form(epsilon_form(e), &D);
    USeries lhs = X.expand(e).specialize_t().scaled(BPoly(D));
    expect(r, lhs.agrees_with(rhs, X.precision()), ce);
    // kernel, both directions
    expect(r, epsilon_form(e.scaled(tt)).is_zero(), ce);
    bool all_div = true;
    for (const auto& kv : e0->terms()) all_div &= kv.second.eval_t_at_theta().is_zero();
    expect(r, epsilon_form(*e0).is_zero() == all_div, ce);
    // type support
    USeries s = X.expand(*e0);
    expect(r, !s.is_zero(), ce);
    for (std::size_t n = 0; n < s.precision(); ++n)
      if (!s.coeff(n).is_zero() && canonical_type(q, long(n)) != e0->degree()->m) {
        expect(r, false, ce);
        break;
      }
  }
  return r;
}

SuiteResult suite_nu_bounds(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "nu-bounds";
  const Field& f = Field::get(cfg.q);
  const unsigned q = cfg.q;
  const long mod_max = std::max<long>(60, cfg.mu_max);
  std::size_t N = std::size_t(cfg.mu_max * cfg.nu_max) + 2 * q + 2;
  N = std::max({N, std::size_t(mod_max / long(q + 1)) + q + 2, qpow(q, cfg.k_max) + 2});
  Expander X(f, N);
  long modular = 0, random_checked = 0, cells = 0;
  for (long mu = 0; mu <= mod_max; ++mu)
    for (unsigned m = 0; m < types_of(q); ++m)
      for (const auto& x : classical_basis(q, mu, m)) {
        auto v = nu_bound_check(X, GradedElement::monomial(f, x, BPoly::constant(f, 1)));
        ++modular;
        expect(r, v.pass && v.nu_inf && *v.nu_inf == x.b, {{"monomial", monomial_to_string(x)}, {"mu", mu}});
      }
  std::mt19937_64 rng(cfg.seed);
  for (long nu = 1; nu <= cfg.nu_max; ++nu)
    for (long mu = 0; mu <= cfg.mu_max; ++mu)
      for (unsigned m = 0; m < types_of(q); ++m) {
        if (graded_monomials(q, mu, nu, m).empty()) continue;
        ++cells;
        for (long s = 0; s < cfg.samples; ++s) {
          auto e = random_homogeneous(f, mu, nu, m, rng);
          auto v = nu_bound_check(X, *e);
          ++random_checked;
          expect(r, v.pass, {{"element", element_to_json(*e)}, {"cap", v.cap}});
        }
      }
  std::size_t qk = 1;
  nlohmann::json sharp = nlohmann::json::array();
  for (unsigned k = 0; k <= cfg.k_max; ++k, qk *= q) {
    auto v = nu_bound_check(X, GradedElement::generator(f, Gen::BoldE).tau(k));
    expect(r, v.nu_inf && *v.nu_inf == qk && long(qk) == v.degree.mu * v.degree.nu, {{"sharpness_k", k}});
    sharp.push_back(v.nu_inf ? long(*v.nu_inf) : -1);
  }
  r.details["modular_monomials"] = modular;
  r.details["random_elements"] = random_checked;
  r.details["cells"] = cells;
  r.details["sharpness_nu_inf"] = sharp;
  return r;
}

SuiteResult suite_siegel(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "siegel";
  const Field& f = Field::get(cfg.q);
  std::mt19937_64 rng(cfg.seed);
  const long samples = std::min<long>(cfg.samples, 50);
  for (long it = 0; it < samples; ++it) {
    const std::size_t U = 1 + rng() % 3, V = U + 1 + rng() % (U + 1);
    const unsigned d = 1 + unsigned(rng() % 2);
    SiegelSystem s;
    s.field = &f;
    for (std::size_t i = 0; i < U; ++i) {
      std::vector<BPoly> row;
      for (std::size_t j = 0; j < V; ++j) row.push_back(random_bpoly(f, rng, d));
      s.a.push_back(row);
    }
    auto sol = siegel_solve(s);
    bool nonzero = std::any_of(sol.x.begin(), sol.x.end(), [](const BPoly& x) { return !x.is_zero(); });
    expect(r, sol.residual_zero && nonzero && sol.max_deg <= int(siegel_budget(U, V, s.d())),
           {{"U", U}, {"V", V}, {"d", s.d()}, {"max_deg", sol.max_deg}});
  }
  return r;
}

SuiteResult suite_resultant(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "resultant";
  const Field& f = Field::get(cfg.q);
  const unsigned q = cfg.q;
  const std::size_t N = 40;
  Expander X(f, N);
  const USeries H1 = shift_down(X.generator(Gen::BoldH), 1).inverse();
  std::mt19937_64 rng(cfg.seed);
  long pairs = 0, zero = 0, tau_pairs = 0;
  const long want = std::max<long>(50, std::min<long>(cfg.samples, 200) / 4);
  for (long guard = 0; pairs - zero < want && guard < 50 * want; ++guard) {
    const bool use_tau = guard % 5 == 4;
    long nu1 = 1 + long(rng() % 2), nu2 = 1 + long(rng() % 2);
    long mu1 = long(q + 1) * nu1 + long(rng() % 5), mu2 = long(q + 1) * nu2 + long(rng() % 5);
    auto x = random_homogeneous(f, mu1, nu1, long(rng() % (q - 1)), rng, 3);
    auto y = use_tau ? x : random_homogeneous(f, mu2, nu2, long(rng() % (q - 1)), rng, 3);
    if (!x || !y) continue;
    GradedElement fy = use_tau ? y->tau() : *y;
    if (x->e_degree() == 0 && fy.e_degree() == 0) continue;
    if (x->e_degree() > 2 || fy.e_degree() > 2) continue;
    ++pairs;
    tau_pairs += use_tau;
    nlohmann::json ce = {{"f", element_to_json(*x)}, {"f_prime", element_to_json(fy)}};
    ResultantLedger led = resultant_ledger(*x, fy);
    expect(r, led.pass(), ce);
    if (led.zero) {
      ++zero;
      continue;
    }
    // factor 𝒉^{ν*} out of the expansion: 𝒉 = u·H1^{-1}. Numerators are
    // cross-multiplied by the other denominator since τ-pairs are not integral.
    GradedElement R = resultant_in_E(*x, fy);
    const GradedElement& P0 = *led.phi0;
    USeries S = X.expand_numerator(R).scaled(P0.denominator_poly());
    bool low_zero = true;
    for (std::size_t n = 0; n < led.nu_star && n < S.precision(); ++n) low_zero &= S.coeff(n).is_zero();
    expect(r, low_zero, ce);
    if (!low_zero || led.nu_star >= N) continue;
    USeries phi = (shift_down(S, led.nu_star) * H1.pow(led.nu_star)).truncated(N - led.nu_star);
    USeries phi0 = X.expand_numerator(P0).scaled(R.denominator_poly());
    expect(r, phi.agrees_with(phi0, N - led.nu_star), ce);
    bool support = true;
    for (std::size_t n = 0; n < phi.precision(); ++n)
      if (!phi.coeff(n).is_zero() && canonical_type(q, long(n)) != led.m_star) support = false;
    expect(r, support, ce);
  }
  r.details["pairs"] = pairs;
  r.details["tau_pairs"] = tau_pairs;
  r.details["zero_resultants"] = zero;
  if (pairs - zero < want) violate(r, {{"reason", "not enough pairs"}, {"pairs", pairs}});
  return r;
}

SuiteResult suite_theorem(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "theorem";
  const Field& f = Field::get(cfg.q);
  const unsigned q = cfg.q;
  const long w_max = 200, l_max = 3;
  Expander X(f, std::size_t(w_max / long(q + 1) + l_max + 12));
  long monos = 0, randoms = 0, capped = 0, hyp = 0;
  auto check = [&](const QuasiModularForm& qf, long w, long l, long m) {
    nlohmann::json ce = {{"w", w}, {"l", l}, {"m", m}};
    try {
      TheoremVerdict v = theorem_check(X, qf, w, l, m);
      hyp += v.hypothesis_met;
      expect(r, v.pass && v.hypothesis_met == (double(w) >= v.threshold), ce);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted) throw;
      ++capped;
      expect(r, false, ce);
    }
  };
  for (long w = 0; w <= w_max; ++w)
    for (unsigned m = 0; m < types_of(q); ++m)
      for (const auto& key : quasi_modular_monomials(q, w, l_max, m)) {
        QuasiModularForm qf;
        qf.field = &f;
        qf.weight = w;
        qf.type = m;
        qf.depth = key[2];
        qf.terms.emplace(key, RationalFunction(APoly::constant(f, 1)));
        ++monos;
        check(qf, w, std::max<long>(1, key[2]), m);
      }
  std::mt19937_64 rng(cfg.seed);
  for (long s = 0; s < cfg.samples; ++s) {
    long w = long(rng() % (w_max + 1)), l = 1 + long(rng() % l_max), m = long(rng() % (q - 1));
    auto qf = random_quasi_modular(f, w, l, m, rng);
    if (!qf) continue;
    ++randoms;
    check(*qf, w, l, m);
  }
  r.details["monomials"] = monos;
  r.details["random_forms"] = randoms;
  r.details["capped"] = capped;
  r.details["hypothesis_met"] = hyp;
  return r;
}

// ---------------------------------------------------------------------------

nlohmann::json element_to_json(const GradedElement& e) {
  nlohmann::json j;
  j["q"] = e.field().q();
  nlohmann::json t = nlohmann::json::array();
  for (const auto& [m, c] : e.terms()) t.push_back({{"mono", {m.a, m.b, m.c, m.e}}, {"coeff", bpoly_to_json(c)}});
  j["terms"] = t;
  nlohmann::json d = nlohmann::json::array();
  for (auto [k, n] : e.denominator()) d.push_back({k, n});
  j["den"] = d;
  return j;
}

GradedElement element_from_json(const nlohmann::json& j) {
  try {
    const Field& f = Field::get(j.at("q").get<unsigned>());
    GradedElement e(f);
    for (const auto& t : j.at("terms")) {
      auto m = t.at("mono");
      Monomial x{m.at(0).get<unsigned>(), m.at(1).get<unsigned>(), m.at(2).get<unsigned>(), m.at(3).get<unsigned>()};
      e += GradedElement::monomial(f, x, bpoly_from_json(f, t.at("coeff")));
    }
    GradedElement::Denominator d;
    if (j.contains("den"))
      for (const auto& p : j.at("den")) d[p.at(0).get<unsigned>()] += p.at(1).get<unsigned>();
    return e.divided_by(d);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed element JSON: ") + ex.what());
  }
}

}  // namespace dqm
