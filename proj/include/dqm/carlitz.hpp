#pragma once

#include <functional>
#include <vector>

#include "dqm/ratfunc.hpp"
#include "dqm/useries.hpp"

namespace dqm {

/// Σ_i c_i X^{q^i} with c_i ∈ A.
class AdditivePolynomial {
 public:
  AdditivePolynomial(const Field& f, std::vector<APoly> coeffs);
  static AdditivePolynomial identity(const Field& f);

  const Field& field() const { return *f_; }
  /// Coefficient of X^{q^i}.
  const std::vector<APoly>& coeffs() const { return c_; }
  int q_degree() const { return int(c_.size()) - 1; }

  /// (P∘Q)(X) = P(Q(X))
  friend AdditivePolynomial compose(const AdditivePolynomial& p, const AdditivePolynomial& q);
  friend AdditivePolynomial operator+(const AdditivePolynomial& a, const AdditivePolynomial& b);
  friend bool operator==(const AdditivePolynomial& a, const AdditivePolynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  const Field* f_;
  std::vector<APoly> c_;
};

/// φ_a for the Carlitz module φ_θ = θX + X^q.
AdditivePolynomial carlitz_action(const APoly& a);

/// Bracket with range check: InvalidIndex for i <= 0.
APoly bracket_checked(const Field& f, int i);

/// u_a = u^{q^d} / f_a(u), f_a(u) = u^{q^d} φ_a(1/u), for monic a of degree d.
/// PrecisionExhausted when q^d >= N.
USeries u_sub_a(const APoly& a, std::size_t N);
/// u_a^j to precision N (zero series when j q^d >= N).
USeries u_sub_a_power(const APoly& a, unsigned j, std::size_t N);

/// Monic polynomials of degree d in degree-lexicographic order of their
/// coefficient vectors (a_{d−1}, ..., a_0).
void for_each_monic(const Field& f, unsigned d, const std::function<void(const APoly&)>& fn);

/// G̃_k as coefficients indexed by the power of X.
struct GossPolynomial {
  unsigned k;
  std::vector<RationalFunction> coeffs;
  friend bool operator==(const GossPolynomial& a, const GossPolynomial& b) { return a.k == b.k && a.coeffs == b.coeffs; }
};

/// Fast path: G̃_k = X(G̃_{k−1} + Σ_{i≥1} G̃_{k−q^i}/d_i).
GossPolynomial goss_polynomial(const Field& f, unsigned k);
/// Definition: G̃_k(X) = Σ_j X^{j+1} [y^{k−1}] ê(y)^j.
GossPolynomial goss_polynomial_by_definition(const Field& f, unsigned k);

}  // namespace dqm
