#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dqm/graded.hpp"
#include "dqm/siegel.hpp"

namespace dqm {

/// One inequality with its two sides. Log-valued sides are shown as doubles,
/// the verdict is decided exactly.
struct LedgerRow {
  std::string name;
  double lhs = 0, rhs = 0;
  bool pass = false;
  bool informational = false;  // recorded but not part of the overall verdict
};
nlohmann::json ledger_to_json(const std::vector<LedgerRow>& rows);

/// Exact tests of logarithmic inequalities, via big integers.
namespace exact {
/// a ≤ c·log_q(b) ⇔ q^a ≤ b^c (a, c ≥ 0, b ≥ 1)
bool le_c_log(unsigned q, long a, long c, long b);
/// q^{q^k} > b^c, the defining inequality of κ
bool qqk_gt(unsigned q, unsigned k, long b, long c);
}  // namespace exact

/// κ(μ,ν) = ⌊log_q(4ν) + log_q log_q(μ+ν+q²−1)⌋ + 1, as the least k with
/// q^{q^k} > (μ+ν+q²−1)^{4ν}.
unsigned kappa(unsigned q, long mu, long nu);

struct ReducedInfo {
  std::size_t n0;
  int deg_b;      // deg_t of the leading coefficient b_{n₀}
  bool reduced;   // b_{n₀}(θ) ≠ 0
};
/// ZeroToPrecision when no coefficient is found below cap.
ReducedInfo reduced_info(const Expander& X, const GradedElement& e, std::size_t cap);
bool is_reduced(const Expander& X, const GradedElement& e, std::size_t cap);
/// Least k with q^k > deg_t b_{n₀} (k = 0 for constant b) and τ^k e.
std::pair<unsigned, GradedElement> twist_to_reduce(const Expander& X, const GradedElement& e, std::size_t cap);

enum class NuMode { Modular, Deformed };
struct NuBoundVerdict {
  NuMode mode;
  GDegree degree;
  std::size_t cap = 0;
  std::optional<std::size_t> nu_inf;  // empty when zero below the cap
  bool pass = false;
};
/// ν_∞ ≤ μ/(q+1) for ν = 0, ν_∞ ≤ μν otherwise, searching up to
/// N₀ = bound + (q−1) + m + 1.
NuBoundVerdict nu_bound_check(const Expander& X, const GradedElement& e);
std::size_t nu_search_cap(unsigned q, const GDegree& d);

struct AuxOptions {
  bool allow_outside_hypothesis = false;
  std::size_t prec_slack = 4;
  /// Recompute ν_∞ of the specialized form from its E, g, h expansion.
  bool direct_expansion = true;
};

struct AuxFormReport {
  unsigned q;
  long mu, nu;
  unsigned m;
  bool hypothesis_met = false;
  std::size_t V = 0, U = 0;
  int d = 0;
  unsigned D = 0;
  std::vector<int> solution_degrees;
  bool residual_zero = false;
  std::size_t nu_inf_f = 0;   // ν_∞(𝒇)
  std::size_t n0 = 0;
  int deg_b_n0 = 0;
  unsigned k = 0;             // κ(μ,ν)
  long r = 0;                 // weight of f_{μ,ν,m}
  std::size_t nu_inf_spec = 0;  // ν_∞(f_{μ,ν,m})
  unsigned depth = 0;
  std::vector<Monomial> basis;
  std::vector<BPoly> coefficients;
  std::vector<LedgerRow> ledger;
  bool pass() const;
  nlohmann::json to_json() const;
};

/// The auxiliary-form pipeline. ConditionViolated outside
/// μ ≥ (q+1)ν + 2(q²−1), ν ≥ 1, 0 ≤ m ≤ q−2 unless allowed by opts.
AuxFormReport construct_aux(const Field& f, long mu, long nu, long m, const AuxOptions& opts = {});

/// g^a h^b E^c of weight w, type m and c ≤ l.
std::vector<std::array<unsigned, 3>> quasi_modular_monomials(unsigned q, long w, long l, long m);
/// Nonzero combination of at most max_terms of those with random A-coefficients.
std::optional<QuasiModularForm> random_quasi_modular(const Field& f, long w, long l, long m, std::mt19937_64& rng,
                                                     unsigned max_terms = 4);

struct TheoremVerdict {
  long w, l;
  unsigned m;
  std::size_t nu_inf = 0;
  bool hypothesis_met = false;
  double threshold = 0;  // 4l(2q(q+2)(3+2q)l + 3(q²+1))^{3/2}
  long rhs = 0;          // 16q³(3+2q)²lw
  bool pass = false;
};
/// ν_∞(f) ≤ 16q³(3+2q)²lw. PrecisionExhausted if f vanishes to the
/// expander's precision.
TheoremVerdict theorem_check(const Expander& X, const QuasiModularForm& f, long w, long l, long m);
/// ν_∞ of a quasi-modular form, computed lazily below cap.
std::size_t form_vanishing_order(const Expander& X, const QuasiModularForm& f, std::size_t cap);

}  // namespace dqm
