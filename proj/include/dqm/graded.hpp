#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dqm/deformations.hpp"
#include "dqm/ratfunc.hpp"

namespace dqm {

enum class Gen { G, H, BoldE, BoldH };

/// (μ, ν, m) with m reduced mod q−1.
struct GDegree {
  long mu = 0;
  long nu = 0;
  unsigned m = 0;
  friend bool operator==(const GDegree&, const GDegree&) = default;
};

/// g^a h^b 𝑬^c 𝒉^e
struct Monomial {
  unsigned a = 0, b = 0, c = 0, e = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

unsigned canonical_type(unsigned q, long m);
GDegree monomial_degree(unsigned q, const Monomial& mono);
GDegree generator_degree(unsigned q, Gen g);
/// μ + ν ≡ 2m mod q−1; graded pieces off this lattice are zero.
bool degree_compatible(unsigned q, long mu, long nu, unsigned m);
std::string monomial_to_string(const Monomial& mono);

/// Element of F_q[t,θ][g,h,𝑬,𝒉] divided by Π_j (t − θ^{q^j})^{n_j}, j ≥ 1.
class GradedElement {
 public:
  using Terms = std::map<Monomial, BPoly>;
  using Denominator = std::map<unsigned, unsigned>;  // j ↦ n_j

  explicit GradedElement(const Field& f) : f_(&f) {}
  static GradedElement generator(const Field& f, Gen g);
  static GradedElement monomial(const Field& f, const Monomial& mono, const BPoly& c);
  static GradedElement scalar(const BPoly& c);
  /// 𝑭 = (𝒉 + g𝑬)/(t − θ^q)
  static GradedElement bold_F(const Field& f);

  const Field& field() const { return *f_; }
  const Terms& terms() const { return terms_; }
  const Denominator& denominator() const { return den_; }
  BPoly denominator_poly() const;
  bool is_zero() const { return terms_.empty(); }

  /// nullopt for zero or inhomogeneous elements.
  std::optional<GDegree> degree() const;
  bool is_homogeneous() const;
  /// Degree in 𝑬 (0 for zero).
  unsigned e_degree() const;
  /// Coefficient of 𝑬^i as an 𝑬-free element with the same denominator.
  GradedElement e_coefficient(unsigned i) const;

  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
  GradedElement operator-() const;
  GradedElement scaled(const BPoly& c) const;
  GradedElement pow(unsigned n) const;
  /// Divides by Π_j (t − θ^{q^j})^{n_j}.
  GradedElement divided_by(const Denominator& d) const;
  /// Same numerator and denominator after normalization.
  friend bool operator==(const GradedElement& a, const GradedElement& b);

  /// τ^k, rewritten in g, h, 𝑬, 𝒉: τg = g^q, τh = h^q, τ𝑬 = 𝑭,
  /// τ𝒉 = Δ𝑬 = −h^{q−1}𝑬, scalars twisted.
  GradedElement tau(unsigned k = 1) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& mono, const BPoly& c);
  void normalize();
  void bring_to(const Denominator& target);
  const Field* f_;
  Terms terms_;
  Denominator den_;
};

/// Polynomial in E, g, h with K coefficients; key (a, b, c) for g^a h^b E^c.
struct QuasiModularForm {
  const Field* field = nullptr;
  std::map<std::array<unsigned, 3>, RationalFunction> terms;
  long weight = 0;
  unsigned type = 0;
  unsigned depth = 0;
  bool is_zero() const { return terms.empty(); }
};

/// ε: t ↦ θ, 𝑬 ↦ E, 𝒉 ↦ h. NotHomogeneous for inhomogeneous input.
QuasiModularForm epsilon_form(const GradedElement& e);

/// (a, b) with (q−1)a + (q+1)b = k and b ≡ m mod (q−1), as monomials g^a h^b.
std::vector<Monomial> classical_basis(unsigned q, long k, long m);
/// ⌊k/(q²−1)⌋ + dim M_{k*,m} with k* = k mod (q²−1).
long classical_dim_formula(unsigned q, long k, long m);
/// Every monomial of degree (μ, ν, m), no hypothesis on μ.
std::vector<Monomial> graded_monomials(unsigned q, long mu, long nu, long m);
/// φ·𝒉^s·𝑬^{ν−s}. ConditionViolated unless μ ≥ (q+1)ν ≥ 0, EmptySpace when empty.
std::vector<Monomial> mdag_basis(unsigned q, long mu, long nu, long m);

/// Random element of F_q[t,θ] with deg_t, deg_θ ≤ max_deg (possibly zero).
BPoly random_bpoly(const Field& f, std::mt19937_64& rng, unsigned max_deg);
/// Nonzero combination of at most max_terms monomials of degree (μ, ν, m) with
/// random coefficients; nullopt when the graded piece is zero.
std::optional<GradedElement> random_homogeneous(const Field& f, long mu, long nu, long m, std::mt19937_64& rng,
                                                unsigned max_terms = 4, unsigned max_deg = 1);

struct DimensionRow {
  long mu, nu;
  unsigned m;
  long dim;
  long sigma_num, sigma_den;  // σ(μ,ν) = sigma_num / sigma_den
  double sigma() const { return double(sigma_num) / double(sigma_den); }
  bool applicable;        // μ ≥ (q+1)ν
  bool compatible;        // μ + ν ≡ 2m mod q−1
  bool positivity_claim;  // μ > ν(q+1)/2 + q² − 1
  bool lower_ok, upper_ok, positive_ok;
  bool pass() const { return lower_ok && upper_ok && positive_ok; }
};
struct DimensionReport {
  unsigned q;
  std::vector<DimensionRow> rows;
  long classical_checked = 0, classical_mismatches = 0;
  bool pass() const;
  std::string to_csv() const;
};
/// Rows for 0 ≤ μ ≤ mu_max, 0 ≤ ν ≤ nu_max, all types; the classical formula is
/// compared for k ≤ mu_max.
DimensionReport dimension_report(unsigned q, long mu_max, long nu_max);

/// Sylvester resultant in 𝑬. BothEFree when neither argument involves 𝑬.
GradedElement resultant_in_E(const GradedElement& f, const GradedElement& fp);

struct ResultantLedger {
  unsigned nu_star = 0;
  long w_star = 0;
  unsigned m_star = 0;
  bool zero = false;
  bool h_power_ok = false;   // every monomial has 𝒉-degree ≥ ν*
  bool phi0_ok = false;      // φ_0 ∈ F_q[t,θ][g,h] of weight w*, type m*
  std::optional<GradedElement> phi0;
  bool pass() const { return zero || (h_power_ok && phi0_ok); }
};
/// Checks Res = 𝒉^{νl′+ν′l−ll′}·φ_0 with the predicted weight and type.
ResultantLedger resultant_ledger(const GradedElement& f, const GradedElement& fp);

/// Substitutes the computed series for g, h, 𝑬, 𝒉 at a fixed precision.
class Expander {
 public:
  Expander(const Field& f, std::size_t N);
  Expander(BaseFormSet base, DeformationSet def);

  const Field& field() const { return *f_; }
  std::size_t precision() const { return N_; }
  const USeries& generator(Gen g) const;
  const BaseFormSet& base() const { return base_; }
  const DeformationSet& deformations() const { return def_; }

  USeries monomial(const Monomial& mono) const;
  /// Numerator series Σ c·monomial, before division by the denominator.
  USeries expand_numerator(const GradedElement& e) const;
  /// Full expansion; NormalizationGateFailed if the denominator does not divide.
  USeries expand(const GradedElement& e) const;
  /// u^n coefficient of the numerator, computed lazily.
  BPoly numerator_coeff(const GradedElement& e, std::size_t n) const;
  /// ν_∞ searched below min(cap, N); ZeroToPrecision(cap) otherwise.
  std::size_t vanishing_order(const GradedElement& e, std::size_t cap) const;
  /// Σ c·E^c g^a h^b over a common A-denominator; returns the numerator.
  USeries expand_form(const QuasiModularForm& f, APoly* common_den) const;

  /// Cached g^a h^b, 𝑬^c 𝒉^e and E^c at the expander's precision.
  const USeries& gh_power(unsigned a, unsigned b) const;
  const USeries& eh_power(unsigned c, unsigned e) const;
  const USeries& classical_e_power(unsigned c) const;

 private:
  const Field* f_;
  std::size_t N_;
  BaseFormSet base_;
  DeformationSet def_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<unsigned, unsigned>, std::unique_ptr<USeries>> gh_, eh_, ce_;
};

}  // namespace dqm
