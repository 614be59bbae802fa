#include "dqm/graded.hpp"

#include <algorithm>
#include <sstream>

#include "dqm/error.hpp"

namespace dqm {

namespace {

std::size_t qpow(std::size_t q, unsigned k) {
  std::size_t r = 1;
  while (k--) r *= q;
  return r;
}

long mod_pos(long x, long n) {
  long r = x % n;
  return r < 0 ? r + n : r;
}

BPoly den_factor(const Field& f, unsigned j) { return BPoly::t_minus_theta_pow(f, qpow(f.q(), j)); }

bool factor_divides(const BPoly& c, unsigned j) {
  const Field& f = c.field();
  return c.eval_t(APoly::monomial(f, 1, qpow(f.q(), j))).is_zero();
}

}  // namespace

unsigned canonical_type(unsigned q, long m) { return q == 2 ? 0u : unsigned(mod_pos(m, long(q) - 1)); }

GDegree monomial_degree(unsigned q, const Monomial& x) {
  GDegree d;
  d.mu = long(q - 1) * x.a + long(q + 1) * x.b + long(x.c) + long(q) * x.e;
  d.nu = long(x.c) + x.e;
  d.m = canonical_type(q, long(x.b) + x.c + x.e);
  return d;
}

GDegree generator_degree(unsigned q, Gen g) {
  switch (g) {
    case Gen::G: return monomial_degree(q, {1, 0, 0, 0});
    case Gen::H: return monomial_degree(q, {0, 1, 0, 0});
    case Gen::BoldE: return monomial_degree(q, {0, 0, 1, 0});
    case Gen::BoldH: return monomial_degree(q, {0, 0, 0, 1});
  }
  return {};
}

bool degree_compatible(unsigned q, long mu, long nu, unsigned m) {
  return mod_pos(mu + nu - 2 * long(m), long(q) - 1) == 0;
}

std::string monomial_to_string(const Monomial& x) {
  std::ostringstream os;
  bool any = false;
  auto put = [&](const char* s, unsigned n) {
    if (!n) return;
    if (any) os << "*";
    os << s;
    if (n > 1) os << "^" << n;
    any = true;
  };
  put("g", x.a);
  put("h", x.b);
  put("E", x.c);
  put("hb", x.e);
  if (!any) os << "1";
  return os.str();
}

// ---------------------------------------------------------------------------

GradedElement GradedElement::generator(const Field& f, Gen g) {
  Monomial m;
  switch (g) {
    case Gen::G: m.a = 1; break;
    case Gen::H: m.b = 1; break;
    case Gen::BoldE: m.c = 1; break;
    case Gen::BoldH: m.e = 1; break;
  }
  return monomial(f, m, BPoly::constant(f, 1));
}

GradedElement GradedElement::monomial(const Field& f, const Monomial& mono, const BPoly& c) {
  GradedElement r(f);
  r.add_term(mono, c);
  return r;
}

GradedElement GradedElement::scalar(const BPoly& c) { return monomial(c.field(), Monomial{}, c); }

GradedElement GradedElement::bold_F(const Field& f) {
  GradedElement r = generator(f, Gen::BoldH) + generator(f, Gen::G) * generator(f, Gen::BoldE);
  r.den_[1] = 1;
  r.normalize();
  return r;
}

BPoly GradedElement::denominator_poly() const {
  BPoly d = BPoly::constant(*f_, 1);
  for (auto [j, n] : den_) d = d * den_factor(*f_, j).pow(n);
  return d;
}

void GradedElement::add_term(const Monomial& mono, const BPoly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void GradedElement::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  if (terms_.empty()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    auto& [j, n] = *it;
    while (n > 0) {
      bool all = std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return factor_divides(kv.second, j); });
      if (!all) break;
      BPoly fac = den_factor(*f_, j);
      for (auto& kv : terms_) kv.second = kv.second.exact_div(fac);
      --n;
    }
    it = n == 0 ? den_.erase(it) : std::next(it);
  }
}

void GradedElement::bring_to(const Denominator& target) {
  BPoly mult = BPoly::constant(*f_, 1);
  for (auto [j, n] : target) {
    unsigned have = den_.count(j) ? den_.at(j) : 0;
    if (n > have) mult = mult * den_factor(*f_, j).pow(n - have);
  }
  if (!mult.is_one())
    for (auto& kv : terms_) kv.second = kv.second * mult;
  den_ = target;
}

std::optional<GDegree> GradedElement::degree() const {
  if (terms_.empty()) return std::nullopt;
  const unsigned q = f_->q();
  GDegree d = monomial_degree(q, terms_.begin()->first);
  for (const auto& kv : terms_)
    if (!(monomial_degree(q, kv.first) == d)) return std::nullopt;
  return d;
}

bool GradedElement::is_homogeneous() const { return terms_.empty() || degree().has_value(); }

unsigned GradedElement::e_degree() const {
  unsigned l = 0;
  for (const auto& kv : terms_) l = std::max(l, kv.first.c);
  return l;
}

GradedElement GradedElement::e_coefficient(unsigned i) const {
  GradedElement r(*f_);
  for (const auto& [m, c] : terms_)
    if (m.c == i) r.terms_.emplace(Monomial{m.a, m.b, 0, m.e}, c);
  r.den_ = den_;
  r.normalize();
  return r;
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  if (den_ != o.den_) {
    Denominator l = den_;
    for (auto [j, n] : o.den_) l[j] = std::max(l[j], n);
    GradedElement b = o;
    bring_to(l);
    b.bring_to(l);
    for (const auto& [m, c] : b.terms_) add_term(m, c);
  } else {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
  }
  normalize();
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) { return *this += -o; }

GradedElement GradedElement::operator-() const {
  GradedElement r = *this;
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

GradedElement operator*(const GradedElement& x, const GradedElement& y) {
  GradedElement r(*x.f_);
  for (const auto& [m1, c1] : x.terms_)
    for (const auto& [m2, c2] : y.terms_)
      r.add_term(Monomial{m1.a + m2.a, m1.b + m2.b, m1.c + m2.c, m1.e + m2.e}, c1 * c2);
  r.den_ = x.den_;
  for (auto [j, n] : y.den_) r.den_[j] += n;
  r.normalize();
  return r;
}

GradedElement GradedElement::scaled(const BPoly& c) const {
  GradedElement r = *this;
  for (auto& kv : r.terms_) kv.second = kv.second * c;
  r.normalize();
  return r;
}

GradedElement GradedElement::pow(unsigned n) const {
  GradedElement r = scalar(BPoly::constant(*f_, 1));
  GradedElement b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

GradedElement GradedElement::divided_by(const Denominator& d) const {
  GradedElement r = *this;
  if (r.terms_.empty()) return r;
  for (auto [j, n] : d)
    if (n) r.den_[j] += n;
  r.normalize();
  return r;
}

bool operator==(const GradedElement& a, const GradedElement& b) {
  return a.f_ == b.f_ && a.den_ == b.den_ && a.terms_ == b.terms_;
}

GradedElement GradedElement::tau(unsigned k) const {
  if (k == 0) return *this;
  const Field& f = *f_;
  const unsigned q = f.q();
  const GradedElement F = bold_F(f);
  // τ𝒉 = Δ𝑬 = −h^{q−1}𝑬
  const GradedElement tH = monomial(f, Monomial{0, q - 1, 1, 0}, BPoly::constant(f, f.neg(1)));
  std::map<unsigned, GradedElement> Fp, tHp;
  auto power = [](std::map<unsigned, GradedElement>& cache, const GradedElement& base, unsigned n) -> const GradedElement& {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    return cache.emplace(n, base.pow(n)).first->second;
  };
  GradedElement r(f);
  for (const auto& [m, c] : terms_) {
    GradedElement t = monomial(f, Monomial{q * m.a, q * m.b, 0, 0}, c.twist(1));
    if (m.c) t = t * power(Fp, F, m.c);
    if (m.e) t = t * power(tHp, tH, m.e);
    r += t;
  }
  if (!r.terms_.empty()) {
    for (auto [j, n] : den_) r.den_[j + 1] += n;
    r.normalize();
  }
  return r.tau(k - 1);
}

std::string GradedElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*" << monomial_to_string(m);
  }
  if (!den_.empty()) {
    os << " / ";
    for (auto [j, n] : den_) {
      os << "(t-theta^" << qpow(f_->q(), j) << ")";
      if (n > 1) os << "^" << n;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

QuasiModularForm epsilon_form(const GradedElement& e) {
  QuasiModularForm out;
  out.field = &e.field();
  if (e.is_zero()) return out;
  auto d = e.degree();
  if (!d) throw Error(ErrorCode::NotHomogeneous, "ε needs a homogeneous element");
  out.weight = d->mu + d->nu;
  out.type = d->m;
  const APoly den = e.denominator_poly().eval_t_at_theta();
  for (const auto& [m, c] : e.terms()) {
    APoly num = c.eval_t_at_theta();
    if (num.is_zero()) continue;
    std::array<unsigned, 3> key{m.a, m.b + m.e, m.c};
    RationalFunction v(num, den);
    auto it = out.terms.find(key);
    if (it == out.terms.end()) {
      out.terms.emplace(key, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) out.terms.erase(it);
    }
  }
  for (const auto& kv : out.terms) out.depth = std::max(out.depth, kv.first[2]);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Monomial> classical_basis(unsigned q, long k, long m) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  const long q1 = long(q) - 1;
  for (long b = 0; long(q + 1) * b <= k; ++b) {
    long r = k - long(q + 1) * b;
    if (r % q1 != 0 || mod_pos(b - m, q1) != 0) continue;
    out.push_back(Monomial{unsigned(r / q1), unsigned(b), 0, 0});
  }
  return out;
}

long classical_dim_formula(unsigned q, long k, long m) {
  if (k < 0) return 0;
  const long Q = long(q) * q - 1;
  if (mod_pos(k - 2 * m, long(q) - 1) != 0) return 0;
  return k / Q + long(classical_basis(q, k % Q, m).size());
}

std::vector<Monomial> graded_monomials(unsigned q, long mu, long nu, long m) {
  std::vector<Monomial> out;
  if (mu < 0 || nu < 0) return out;
  for (long s = 0; s <= nu; ++s) {
    long k = mu - s * (long(q) - 1) - nu;
    for (Monomial x : classical_basis(q, k, m - nu)) {
      x.c = unsigned(nu - s);
      x.e = unsigned(s);
      out.push_back(x);
    }
  }
  return out;
}

std::vector<Monomial> mdag_basis(unsigned q, long mu, long nu, long m) {
  if (nu < 0 || mu < long(q + 1) * nu)
    throw Error(ErrorCode::ConditionViolated, "mdag_basis needs μ ≥ (q+1)ν ≥ 0");
  auto out = graded_monomials(q, mu, nu, m);
  if (out.empty()) throw Error(ErrorCode::EmptySpace, "graded piece is zero");
  return out;
}

bool DimensionReport::pass() const {
  if (classical_mismatches) return false;
  return std::all_of(rows.begin(), rows.end(), [](const DimensionRow& r) { return r.pass(); });
}

std::string DimensionReport::to_csv() const {
  std::ostringstream os;
  os << "q,mu,nu,m,dim,sigma_num,sigma_den,applicable,compatible,lower_ok,upper_ok,positive_ok\n";
  for (const auto& r : rows)
    os << q << ',' << r.mu << ',' << r.nu << ',' << r.m << ',' << r.dim << ',' << r.sigma_num << ','
       << r.sigma_den << ',' << r.applicable << ',' << r.compatible << ',' << r.lower_ok << ','
       << r.upper_ok << ',' << r.positive_ok << '\n';
  return os.str();
}

DimensionReport dimension_report(unsigned q, long mu_max, long nu_max) {
  DimensionReport rep;
  rep.q = q;
  const long Q = long(q) * q - 1;
  const unsigned types = q == 2 ? 1 : q - 1;
  for (long nu = 0; nu <= nu_max; ++nu)
    for (long mu = 0; mu <= mu_max; ++mu)
      for (unsigned m = 0; m < types; ++m) {
        DimensionRow r{};
        r.mu = mu;
        r.nu = nu;
        r.m = m;
        r.dim = long(graded_monomials(q, mu, nu, m).size());
        // σ = (ν+1)(2μ − ν(q+1)) / 2(q²−1)
        const long S = (nu + 1) * (2 * mu - nu * long(q + 1));
        r.sigma_num = S;
        r.sigma_den = 2 * Q;
        r.applicable = mu >= long(q + 1) * nu;
        r.compatible = degree_compatible(q, mu, nu, m);
        r.positivity_claim = 2 * mu > nu * long(q + 1) + 2 * Q;
        r.lower_ok = r.upper_ok = r.positive_ok = true;
        if (r.applicable) {
          if (r.compatible) {
            r.lower_ok = S - 2 * Q * (nu + 1) <= 2 * Q * r.dim;
            r.upper_ok = 2 * Q * r.dim <= S + 2 * Q * (nu + 1);
            r.positive_ok = !r.positivity_claim || r.dim > 0;
          } else {
            r.lower_ok = r.upper_ok = r.dim == 0;
          }
        }
        rep.rows.push_back(r);
      }
  for (long k = 0; k <= mu_max; ++k)
    for (unsigned m = 0; m < types; ++m) {
      ++rep.classical_checked;
      if (long(classical_basis(q, k, m).size()) != classical_dim_formula(q, k, m)) ++rep.classical_mismatches;
    }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

GradedElement numerator_of(const GradedElement& e) {
  GradedElement r(e.field());
  for (const auto& [m, c] : e.terms()) r += GradedElement::monomial(e.field(), m, c);
  return r;
}

}  // namespace

BPoly random_bpoly(const Field& f, std::mt19937_64& rng, unsigned max_deg) {
  std::vector<APoly> tc;
  for (unsigned i = 0; i <= max_deg; ++i) {
    std::vector<FqCode> c(max_deg + 1);
    for (auto& x : c) x = FqCode(rng() % f.q());
    tc.emplace_back(f, std::move(c));
  }
  return BPoly(f, std::move(tc));
}

std::optional<GradedElement> random_homogeneous(const Field& f, long mu, long nu, long m, std::mt19937_64& rng,
                                                unsigned max_terms, unsigned max_deg) {
  auto monos = graded_monomials(f.q(), mu, nu, m);
  if (monos.empty()) return std::nullopt;
  for (;;) {
    GradedElement r(f);
    const unsigned k = 1 + unsigned(rng() % std::max(1u, max_terms));
    for (unsigned i = 0; i < k; ++i) {
      const Monomial& x = monos[rng() % monos.size()];
      r += GradedElement::monomial(f, x, random_bpoly(f, rng, max_deg));
    }
    if (!r.is_zero()) return r;
  }
}

namespace {

struct DetSolver {
  const std::vector<std::vector<GradedElement>>& M;
  const Field& f;
  std::map<unsigned, GradedElement> memo;

  // determinant of rows r..n−1 restricted to the columns in mask
  GradedElement det(unsigned r, unsigned mask) {
    const unsigned n = unsigned(M.size());
    if (r == n) return GradedElement::scalar(BPoly::constant(f, 1));
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    GradedElement acc(f);
    bool neg = false;
    for (unsigned c = 0; c < n; ++c) {
      if (!(mask >> c & 1)) continue;
      const GradedElement& a = M[r][c];
      if (!a.is_zero()) {
        GradedElement t = a * det(r + 1, mask & ~(1u << c));
        acc += neg ? -t : t;
      }
      neg = !neg;
    }
    memo.emplace(mask, acc);
    return acc;
  }
};

}  // namespace

GradedElement resultant_in_E(const GradedElement& f, const GradedElement& fp) {
  const Field& F = f.field();
  const unsigned l = f.e_degree(), lp = fp.e_degree();
  if (l == 0 && lp == 0) throw Error(ErrorCode::BothEFree, "neither argument involves 𝑬");
  if (f.is_zero() || fp.is_zero()) return GradedElement(F);
  const GradedElement nf = numerator_of(f), nfp = numerator_of(fp);
  const unsigned n = l + lp;
  std::vector<std::vector<GradedElement>> M(n, std::vector<GradedElement>(n, GradedElement(F)));
  for (unsigned i = 0; i < lp; ++i)
    for (unsigned k = 0; k <= l; ++k) M[i][i + k] = nf.e_coefficient(l - k);
  for (unsigned i = 0; i < l; ++i)
    for (unsigned k = 0; k <= lp; ++k) M[lp + i][i + k] = nfp.e_coefficient(lp - k);
  DetSolver ds{M, F, {}};
  GradedElement num = ds.det(0, (1u << n) - 1);
  // divide by den(f)^{l′} den(f′)^{l}
  GradedElement::Denominator d;
  for (auto [j, m] : f.denominator()) d[j] += m * lp;
  for (auto [j, m] : fp.denominator()) d[j] += m * l;
  return num.divided_by(d);
}

ResultantLedger resultant_ledger(const GradedElement& f, const GradedElement& fp) {
  const Field& F = f.field();
  const unsigned q = F.q();
  auto d = f.degree(), dp = fp.degree();
  if (!d || !dp) throw Error(ErrorCode::NotHomogeneous, "resultant ledger needs homogeneous nonzero inputs");
  const long l = f.e_degree(), lp = fp.e_degree();
  ResultantLedger led;
  const long nu_star = d->nu * lp + dp->nu * l - l * lp;
  led.nu_star = unsigned(nu_star);
  led.w_star = d->mu * lp + dp->mu * l - l * lp - long(q) * nu_star;
  led.m_star = canonical_type(q, long(d->m) * lp + long(dp->m) * l - (d->nu * lp + dp->nu * l));
  GradedElement R = resultant_in_E(f, fp);
  if (R.is_zero()) {
    led.zero = true;
    return led;
  }
  led.h_power_ok = true;
  led.phi0_ok = true;
  GradedElement phi(F);
  for (const auto& [m, c] : R.terms()) {
    if (m.c != 0 || m.e < led.nu_star) {
      led.h_power_ok = false;
      continue;
    }
    Monomial r{m.a, m.b, 0, m.e - led.nu_star};
    if (r.e != 0) led.phi0_ok = false;
    GDegree rd = monomial_degree(q, r);
    if (rd.mu != led.w_star || rd.m != led.m_star) led.phi0_ok = false;
    phi += GradedElement::monomial(F, r, c);
  }
  led.phi0 = phi.divided_by(R.denominator());
  return led;
}

// ---------------------------------------------------------------------------

Expander::Expander(const Field& f, std::size_t N) : Expander(compute_base_forms(f, N), DeformationSet{&f, 0, USeries(f, 0), USeries(f, 0), USeries(f, 0), USeries(f, 0)}) {}

Expander::Expander(BaseFormSet base, DeformationSet def)
    : f_(base.field), N_(base.N), base_(std::move(base)), def_(std::move(def)) {
  if (def_.N == 0) def_ = compute_deformations(base_);
  N_ = std::min({N_, base_.g.precision(), base_.h.precision(), base_.E.precision(), def_.E.precision(),
                 def_.H.precision()});
  base_.g = base_.g.truncated(N_);
  base_.h = base_.h.truncated(N_);
  base_.E = base_.E.truncated(N_);
  def_.E = def_.E.truncated(N_);
  def_.H = def_.H.truncated(N_);
}

const USeries& Expander::generator(Gen g) const {
  switch (g) {
    case Gen::G: return base_.g;
    case Gen::H: return base_.h;
    case Gen::BoldE: return def_.E;
    case Gen::BoldH: return def_.H;
  }
  return base_.g;
}

namespace {

using PowerCache = std::map<std::pair<unsigned, unsigned>, std::unique_ptr<USeries>>;

const USeries* cache_find(std::mutex& mu, const PowerCache& c, std::pair<unsigned, unsigned> k) {
  std::lock_guard<std::mutex> lk(mu);
  auto it = c.find(k);
  return it == c.end() ? nullptr : it->second.get();
}

const USeries& cache_put(std::mutex& mu, PowerCache& c, std::pair<unsigned, unsigned> k, USeries s) {
  std::lock_guard<std::mutex> lk(mu);
  auto it = c.find(k);
  if (it != c.end()) return *it->second;
  return *c.emplace(k, std::make_unique<USeries>(std::move(s))).first->second;
}

}  // namespace

const USeries& Expander::gh_power(unsigned a, unsigned b) const {
  if (auto p = cache_find(mu_, gh_, {a, b})) return *p;
  USeries s = (a == 0 && b == 0) ? USeries::one(*f_, N_)
              : a > 0           ? (gh_power(a - 1, b) * base_.g).truncated(N_)
                                : (gh_power(0, b - 1) * base_.h).truncated(N_);
  return cache_put(mu_, gh_, {a, b}, std::move(s));
}

const USeries& Expander::eh_power(unsigned c, unsigned e) const {
  if (auto p = cache_find(mu_, eh_, {c, e})) return *p;
  USeries s = (c == 0 && e == 0) ? USeries::one(*f_, N_)
              : c > 0           ? (eh_power(c - 1, e) * def_.E).truncated(N_)
                                : (eh_power(0, e - 1) * def_.H).truncated(N_);
  return cache_put(mu_, eh_, {c, e}, std::move(s));
}

const USeries& Expander::classical_e_power(unsigned c) const {
  if (auto p = cache_find(mu_, ce_, {c, 0})) return *p;
  USeries s = c == 0 ? USeries::one(*f_, N_) : (classical_e_power(c - 1) * base_.E).truncated(N_);
  return cache_put(mu_, ce_, {c, 0}, std::move(s));
}

USeries Expander::monomial(const Monomial& m) const {
  const USeries& x = gh_power(m.a, m.b);
  if (m.c == 0 && m.e == 0) return x;
  return (x * eh_power(m.c, m.e)).truncated(N_);
}

USeries Expander::expand_numerator(const GradedElement& e) const {
  USeries r(*f_, N_);
  for (const auto& [m, c] : e.terms()) r += monomial(m).scaled(c);
  return r;
}

USeries Expander::expand(const GradedElement& e) const {
  USeries r = expand_numerator(e);
  if (e.denominator().empty()) return r;
  const BPoly d = e.denominator_poly();
  std::vector<BPoly> cs;
  cs.reserve(r.precision());
  for (const auto& c : r.coeffs()) cs.push_back(c.exact_div(d));
  return USeries(*f_, r.precision(), std::move(cs));
}

BPoly Expander::numerator_coeff(const GradedElement& e, std::size_t n) const {
  if (n >= N_) throw Error(ErrorCode::PrecisionExhausted, "coefficient beyond expander precision");
  BPoly acc(*f_);
  for (const auto& [m, c] : e.terms()) {
    const USeries& x = gh_power(m.a, m.b);
    const USeries& y = eh_power(m.c, m.e);
    const std::size_t vx = m.b, vy = m.c + m.e;  // h, 𝑬, 𝒉 all have valuation 1
    if (vx + vy > n) continue;
    BPoly s(*f_);
    for (std::size_t i = vx; i + vy <= n; ++i) {
      const BPoly& xi = x.coeff(i);
      if (xi.is_zero()) continue;
      const BPoly& yj = y.coeff(n - i);
      if (!yj.is_zero()) s.add_product(xi, yj);
    }
    if (!s.is_zero()) acc.add_product(c, s);
  }
  return acc;
}

std::size_t Expander::vanishing_order(const GradedElement& e, std::size_t cap) const {
  if (e.is_zero()) throw Error(ErrorCode::ZeroToPrecision, "zero element", 0);
  const std::size_t lim = std::min(cap, N_);
  for (std::size_t n = 0; n < lim; ++n)
    if (!numerator_coeff(e, n).is_zero()) return n;
  if (cap > N_) throw Error(ErrorCode::PrecisionExhausted, "vanishing order beyond expander precision");
  throw Error(ErrorCode::ZeroToPrecision, "no nonzero coefficient below the cap", cap);
}

USeries Expander::expand_form(const QuasiModularForm& qf, APoly* common_den) const {
  APoly D = APoly::constant(*f_, 1);
  for (const auto& kv : qf.terms) {
    const APoly& d = kv.second.den();
    D = D * d.exact_div(APoly::gcd(D, d));
  }
  USeries r(*f_, N_);
  for (const auto& [key, v] : qf.terms) {
    USeries s = (gh_power(key[0], key[1]) * classical_e_power(key[2])).truncated(N_);
    r += s.scaled(BPoly(v.num() * D.exact_div(v.den())));
  }
  if (common_den) *common_den = D;
  return r;
}

}  // namespace dqm
