#include "dqm/multiplicity.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "dqm/error.hpp"
#include "dqm/series_json.hpp"

namespace dqm {

using boost::multiprecision::cpp_int;

namespace {

cpp_int ipow(long base, unsigned long e) {
  cpp_int r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

double logq(unsigned q, double x) { return std::log(x) / std::log(double(q)); }

LedgerRow row(std::string name, double lhs, double rhs, bool pass, bool info = false) {
  return LedgerRow{std::move(name), lhs, rhs, pass, info};
}

}  // namespace

nlohmann::json ledger_to_json(const std::vector<LedgerRow>& rows) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["pass"] = r.pass;
    if (r.informational) j["informational"] = true;
    a.push_back(j);
  }
  return a;
}

bool exact::le_c_log(unsigned q, long a, long c, long b) {
  if (a <= 0) return true;  // q^a ≤ 1 ≤ b^c
  if (c <= 0 || b <= 1) return false;
  return ipow(long(q), (unsigned long)a) <= ipow(b, (unsigned long)c);
}

bool exact::qqk_gt(unsigned q, unsigned k, long b, long c) {
  cpp_int e = ipow(long(q), k);
  return ipow(long(q), e.convert_to<unsigned long>()) > ipow(b, (unsigned long)c);
}

unsigned kappa(unsigned q, long mu, long nu) {
  const long X = mu + nu + long(q) * q - 1;
  unsigned k = 0;
  while (!exact::qqk_gt(q, k, X, 4 * nu)) ++k;
  return k;
}

// ---------------------------------------------------------------------------

ReducedInfo reduced_info(const Expander& X, const GradedElement& e, std::size_t cap) {
  ReducedInfo r{};
  r.n0 = X.vanishing_order(e, cap);
  BPoly b = X.numerator_coeff(e, r.n0);
  if (!e.denominator().empty())
    if (auto q = b.try_exact_div(e.denominator_poly())) b = *q;
  r.deg_b = b.deg_t();
  r.reduced = !b.eval_t_at_theta().is_zero();
  return r;
}

bool is_reduced(const Expander& X, const GradedElement& e, std::size_t cap) { return reduced_info(X, e, cap).reduced; }

std::pair<unsigned, GradedElement> twist_to_reduce(const Expander& X, const GradedElement& e, std::size_t cap) {
  ReducedInfo r = reduced_info(X, e, cap);
  const unsigned q = X.field().q();
  unsigned k = 0;
  if (r.deg_b > 0)
    for (long p = 1; p <= r.deg_b; p *= q) ++k;
  return {k, e.tau(k)};
}

std::size_t nu_search_cap(unsigned q, const GDegree& d) {
  const long bound = d.nu == 0 ? d.mu / long(q + 1) : d.mu * d.nu;
  return std::size_t(bound + long(q) - 1 + long(d.m) + 1);
}

NuBoundVerdict nu_bound_check(const Expander& X, const GradedElement& e) {
  auto d = e.degree();
  if (!d) throw Error(ErrorCode::NotHomogeneous, "ν_∞ bound needs a homogeneous nonzero element");
  const unsigned q = X.field().q();
  NuBoundVerdict v;
  v.mode = d->nu == 0 ? NuMode::Modular : NuMode::Deformed;
  v.degree = *d;
  v.cap = nu_search_cap(q, *d);
  try {
    v.nu_inf = X.vanishing_order(e, v.cap);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::ZeroToPrecision) throw;
    v.pass = false;  // vanishing exceeds the bound
    return v;
  }
  const long n = long(*v.nu_inf);
  v.pass = d->nu == 0 ? n * long(q + 1) <= d->mu : n <= d->mu * d->nu;
  return v;
}

// ---------------------------------------------------------------------------

bool AuxFormReport::pass() const {
  return std::all_of(ledger.begin(), ledger.end(), [](const LedgerRow& r) { return r.pass || r.informational; });
}

nlohmann::json AuxFormReport::to_json() const {
  nlohmann::json j;
  j["q"] = q;
  j["mu"] = mu;
  j["nu"] = nu;
  j["m"] = m;
  j["hypothesis_met"] = hypothesis_met;
  j["V"] = V;
  j["U"] = U;
  j["d"] = d;
  j["D"] = D;
  j["solution_degrees"] = solution_degrees;
  j["residual_zero"] = residual_zero;
  j["nu_inf_f"] = nu_inf_f;
  j["n0"] = n0;
  j["deg_b_n0"] = deg_b_n0;
  j["kappa"] = k;
  j["r"] = r;
  j["nu_inf_specialized"] = nu_inf_spec;
  j["depth"] = depth;
  nlohmann::json b = nlohmann::json::array(), c = nlohmann::json::array();
  for (const auto& x : basis) b.push_back(monomial_to_string(x));
  for (const auto& x : coefficients) c.push_back(bpoly_to_json(x));
  j["basis"] = b;
  j["coefficients"] = c;
  j["ledger"] = ledger_to_json(ledger);
  j["pass"] = pass();
  return j;
}

AuxFormReport construct_aux(const Field& f, long mu, long nu, long m, const AuxOptions& opts) {
  const unsigned q = f.q();
  const long Q = long(q) * q - 1;
  if (nu < 1 || m < 0 || m > std::max(0L, long(q) - 2))
    throw Error(ErrorCode::ConditionViolated, "construct_aux needs ν ≥ 1 and 0 ≤ m ≤ q−2");
  AuxFormReport rep{};
  rep.q = q;
  rep.mu = mu;
  rep.nu = nu;
  rep.m = unsigned(m);
  rep.hypothesis_met = mu >= long(q + 1) * nu + 2 * Q;
  if (!rep.hypothesis_met && !opts.allow_outside_hypothesis)
    throw Error(ErrorCode::ConditionViolated, "μ ≥ (q+1)ν + 2(q²−1) fails");
  auto& L = rep.ledger;
  L.push_back(row("hypothesis mu >= (q+1)nu + 2(q^2-1)", double(mu), double(long(q + 1) * nu + 2 * Q),
                  rep.hypothesis_met, opts.allow_outside_hypothesis && !rep.hypothesis_met));
  const long Xl = mu + nu + Q;  // μ + ν + q² − 1
  const double lX = logq(q, double(Xl));

  // step 1: basis and the number of vanishing conditions
  rep.basis = mdag_basis(q, mu, nu, m);
  rep.V = rep.basis.size();
  rep.U = rep.V / 2;

  // step 2: expansion coefficients a_{j,i} at u^{m+(q−1)j}
  const GDegree deg{mu, nu, unsigned(m)};
  const std::size_t cap = nu_search_cap(q, deg);
  const std::size_t N = std::max(std::size_t(m) + (q - 1) * rep.U + opts.prec_slack, cap) + 1;
  Expander X(f, N);
  std::vector<USeries> ser;
  for (const auto& b : rep.basis) ser.push_back(X.monomial(b));
  SiegelSystem sys;
  sys.field = &f;
  bool coeff_ok = true;
  int max_a = 0;
  for (std::size_t j = 0; j < rep.U; ++j) {
    const std::size_t n = std::size_t(m) + (q - 1) * j;
    std::vector<BPoly> rowv;
    for (const auto& s : ser) {
      rowv.push_back(s.coeff(n));
      const int dg = std::max(0, rowv.back().deg_t());
      max_a = std::max(max_a, dg);
      if (!exact::le_c_log(q, dg, nu, long(std::max<std::size_t>(1, n)))) coeff_ok = false;
    }
    sys.a.push_back(std::move(rowv));
  }
  const std::size_t n_last = rep.U ? std::size_t(m) + (q - 1) * (rep.U - 1) : 1;
  L.push_back(row("deg_t a_n <= nu log_q max(1,n)", max_a, double(nu) * logq(q, double(std::max<std::size_t>(1, n_last))),
                  coeff_ok));

  // step 3: Siegel
  if (rep.U == 0) {
    sys.a.clear();
    rep.d = 0;
    rep.D = 0;
    rep.coefficients.assign(rep.V, BPoly(f));
    rep.coefficients[0] = BPoly::constant(f, 1);
    rep.residual_zero = true;
  } else {
    SiegelSolution sol = siegel_solve(sys);
    rep.d = sys.d();
    rep.D = sol.D;
    rep.coefficients = sol.x;
    rep.residual_zero = sol.residual_zero;
  }
  int max_x = 0;
  for (const auto& x : rep.coefficients) {
    rep.solution_degrees.push_back(x.is_zero() ? -1 : x.deg_t());
    max_x = std::max(max_x, x.deg_t());
  }
  L.push_back(row("siegel residual zero", rep.residual_zero ? 0 : 1, 0, rep.residual_zero));
  L.push_back(row("siegel deg x_i <= ceil(Ud/(V-U))", max_x, rep.D, max_x <= int(rep.D)));
  L.push_back(row("siegel deg x_i <= 2 nu log_q(mu+nu+q^2-1)", max_x, 2.0 * double(nu) * lX,
                  exact::le_c_log(q, max_x, 2 * nu, Xl)));

  // steps 4 and 5: the deformation 𝒇 and its vanishing order
  GradedElement F(f);
  for (std::size_t i = 0; i < rep.V; ++i) F += GradedElement::monomial(f, rep.basis[i], rep.coefficients[i]);
  const long lower = long(q - 1) * long(rep.U) + m;
  std::size_t nf = 0;
  bool found = true;
  try {
    nf = X.vanishing_order(F, cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroToPrecision) throw;
    found = false;
  }
  if (!found) {
    L.push_back(row("nu_inf(f) <= mu nu", double(cap), double(mu * nu), false));
    return rep;
  }
  rep.nu_inf_f = rep.n0 = nf;
  L.push_back(row("(q-1)U + m <= nu_inf(f)", double(lower), double(nf), lower <= long(nf)));
  L.push_back(row("(nu+1)mu/(4(q+1)) - 1 <= (q-1)U + m", double((nu + 1) * mu) / double(4 * (q + 1)) - 1.0,
                  double(lower), (nu + 1) * mu <= 4 * long(q + 1) * (lower + 1)));
  L.push_back(row("nu_inf(f) <= mu nu", double(nf), double(mu * nu), long(nf) <= mu * nu));
  const BPoly b = X.numerator_coeff(F, nf);
  rep.deg_b_n0 = b.deg_t();
  L.push_back(row("deg_t b_n0 <= 4 nu log_q(mu+nu+q^2-1)", rep.deg_b_n0, 4.0 * double(nu) * lX,
                  exact::le_c_log(q, rep.deg_b_n0, 4 * nu, Xl)));

  // step 6: reduction by κ twists
  rep.k = kappa(q, mu, nu);
  const double lk = rep.deg_b_n0 > 0 ? logq(q, double(rep.deg_b_n0)) : 0.0;
  bool k_ok = rep.deg_b_n0 <= 0 || ipow(long(q), rep.k) > cpp_int(rep.deg_b_n0);
  L.push_back(row("kappa > log_q deg_t b_n0", rep.k, lk, k_ok));
  const bool reduced = !b.twist(int(rep.k)).eval_t_at_theta().is_zero();
  L.push_back(row("tau^kappa f reduced", reduced ? 1 : 0, 1, reduced));
  // ν_∞(ε(τ^κ𝒇)) from the series: τ^κ of a prefix then t = θ
  USeries head = X.expand(F).truncated(nf + 1);
  USeries spec = head.tau(rep.k).specialize_t();
  auto vs = spec.valuation();
  const std::size_t qk = std::size_t(ipow(long(q), rep.k));
  rep.nu_inf_spec = vs ? *vs : spec.precision();
  L.push_back(row("nu_inf(eps(tau^k f)) = q^k nu_inf(f)", double(rep.nu_inf_spec), double(qk * nf),
                  vs && *vs == qk * nf));

  // step 7: the specialized form
  QuasiModularForm fs = epsilon_form(F.tau(rep.k));
  rep.r = fs.weight;
  rep.depth = fs.depth;
  const long r_pred = mu * long(qk) + nu;
  L.push_back(row("weight r = mu q^k + nu", double(rep.r), double(r_pred), rep.r == r_pred && fs.type == rep.m &&
                                                                              long(fs.depth) <= nu));
  L.push_back(row("r <= 4 q mu nu log_q(mu+nu+q^2-1) + nu", double(rep.r), 4.0 * q * double(mu * nu) * lX + double(nu),
                  exact::le_c_log(q, rep.r - nu, 4 * long(q) * mu * nu, Xl)));
  const long nsp = long(rep.nu_inf_spec);
  if (opts.direct_expansion && vs) {
    // second route: expand the ε-form as a polynomial in E, g, h
    Expander Y(f, rep.nu_inf_spec + 1);
    std::size_t nd = 0;
    bool ok = true;
    try {
      nd = form_vanishing_order(Y, fs, rep.nu_inf_spec + 1);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroToPrecision) throw;
      ok = false;
      nd = rep.nu_inf_spec + 1;
    }
    L.push_back(row("nu_inf(f_spec) by direct expansion", double(nd), double(nsp), ok && long(nd) == nsp));
  }
  {
    // μν² log_q X ≤ q(q+1)ν_∞ ⇔ X^{μν²} ≤ q^{q(q+1)ν_∞}
    bool ok = ipow(Xl, (unsigned long)(mu * nu * nu)) <= ipow(long(q), (unsigned long)(long(q) * (q + 1) * nsp));
    L.push_back(row("mu nu^2 log_q(X)/(q(q+1)) <= nu_inf(f_spec)", double(mu * nu * nu) * lX / double(q * (q + 1)),
                    double(nsp), ok));
  }
  L.push_back(row("nu_inf(f_spec) <= 4 q mu nu^2 log_q(X)", double(nsp), 4.0 * q * double(mu * nu * nu) * lX,
                  exact::le_c_log(q, nsp, 4 * long(q) * mu * nu * nu, Xl)));
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<std::array<unsigned, 3>> quasi_modular_monomials(unsigned q, long w, long l, long m) {
  std::vector<std::array<unsigned, 3>> out;
  const long q1 = long(q) - 1;
  for (long c = 0; c <= l && 2 * c <= w; ++c) {
    const long rest = w - 2 * c;
    for (long b = 0; long(q + 1) * b <= rest; ++b) {
      long r = rest - long(q + 1) * b;
      if (r % q1 != 0 || canonical_type(q, b + c) != canonical_type(q, m)) continue;
      out.push_back({unsigned(r / q1), unsigned(b), unsigned(c)});
    }
  }
  return out;
}

std::optional<QuasiModularForm> random_quasi_modular(const Field& f, long w, long l, long m, std::mt19937_64& rng,
                                                     unsigned max_terms) {
  auto monos = quasi_modular_monomials(f.q(), w, l, m);
  if (monos.empty()) return std::nullopt;
  for (;;) {
    QuasiModularForm r;
    r.field = &f;
    r.weight = w;
    r.type = canonical_type(f.q(), m);
    const unsigned k = 1 + unsigned(rng() % std::max(1u, max_terms));
    for (unsigned i = 0; i < k; ++i) {
      const auto& key = monos[rng() % monos.size()];
      APoly c = random_bpoly(f, rng, 1).t_coeff(0);
      auto it = r.terms.find(key);
      if (it == r.terms.end()) {
        if (!c.is_zero()) r.terms.emplace(key, RationalFunction(c));
      } else {
        it->second += RationalFunction(c);
        if (it->second.is_zero()) r.terms.erase(it);
      }
    }
    if (r.terms.empty()) continue;
    for (const auto& kv : r.terms) r.depth = std::max(r.depth, kv.first[2]);
    return r;
  }
}

std::size_t form_vanishing_order(const Expander& X, const QuasiModularForm& qf, std::size_t cap) {
  const Field& f = X.field();
  if (qf.terms.empty()) throw Error(ErrorCode::ZeroToPrecision, "zero form", 0);
  APoly D = APoly::constant(f, 1);
  for (const auto& kv : qf.terms) D = D * kv.second.den().exact_div(APoly::gcd(D, kv.second.den()));
  std::vector<std::pair<std::array<unsigned, 3>, APoly>> terms;
  for (const auto& [key, v] : qf.terms) terms.emplace_back(key, v.num() * D.exact_div(v.den()));
  const std::size_t lim = std::min(cap, X.precision());
  for (std::size_t n = 0; n < lim; ++n) {
    BPoly acc(f);
    for (const auto& [key, c] : terms) {
      const std::size_t vx = key[1], vy = key[2];
      if (vx + vy > n) continue;
      const USeries& x = X.gh_power(key[0], key[1]);
      const USeries& y = X.classical_e_power(key[2]);
      BPoly s(f);
      for (std::size_t i = vx; i + vy <= n; ++i) {
        const BPoly& xi = x.coeff(i);
        if (xi.is_zero()) continue;
        const BPoly& yj = y.coeff(n - i);
        if (!yj.is_zero()) s.add_product(xi, yj);
      }
      if (!s.is_zero()) acc.add_product(BPoly(c), s);
    }
    if (!acc.is_zero()) return n;
  }
  if (cap > X.precision()) throw Error(ErrorCode::PrecisionExhausted, "vanishing order beyond expander precision");
  throw Error(ErrorCode::ZeroToPrecision, "no nonzero coefficient below the cap", cap);
}

TheoremVerdict theorem_check(const Expander& X, const QuasiModularForm& f, long w, long l, long m) {
  const long q = X.field().q();
  TheoremVerdict v;
  v.w = w;
  v.l = l;
  v.m = canonical_type(unsigned(q), m);
  const long inner = 2 * q * (q + 2) * (3 + 2 * q) * l + 3 * (q * q + 1);
  v.threshold = 4.0 * double(l) * std::pow(double(inner), 1.5);
  // w ≥ 4l·inner^{3/2} ⇔ w² ≥ 16l²·inner³ (both sides nonnegative)
  v.hypothesis_met = w >= 0 && cpp_int(w) * w >= cpp_int(16) * l * l * ipow(inner, 3);
  v.rhs = 16 * q * q * q * (3 + 2 * q) * (3 + 2 * q) * l * w;
  v.nu_inf = form_vanishing_order(X, f, std::size_t(v.rhs) + 1);
  v.pass = long(v.nu_inf) <= v.rhs;
  return v;
}

}  // namespace dqm
