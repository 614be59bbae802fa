#pragma once

#include <vector>

#include "dqm/base_forms.hpp"

namespace dqm {

/// 𝒅 = Σ c_m v^m solving 𝒅 = (t−θ^q)Δ𝒅^{(2)} + g𝒅^{(1)} with c_0 = 1, to
/// u-precision min(N, prec g, prec Δ). RecursionInconsistent if the m = 0
/// equation cannot hold.
USeries compute_d(const USeries& g, const USeries& delta, std::size_t N);

/// Residual 𝒅 − (t−θ^q)Δ𝒅^{(2)} − g𝒅^{(1)}.
USeries d_residual(const USeries& d, const USeries& g, const USeries& delta);

/// Precisions needed so that 𝑬^{(k)} = −τ^k(h)·τ^{k+1}(𝒅) is known to u^N.
struct EFamilyBudget {
  std::size_t N;
  unsigned k;
  std::size_t h_prec;
  std::size_t d_prec;
};
EFamilyBudget e_family_budget(unsigned q, std::size_t N, unsigned k);

struct EFamily {
  std::vector<USeries> via_d;    // −τ^k(h)·τ^{k+1}(𝒅)
  std::vector<USeries> via_tau;  // τ^k(𝑬)
  std::vector<EFamilyBudget> budgets;
  bool agree = true;
};
/// Both routes to 𝑬^{(k)}, k = 0..k_max, compared to precision N.
EFamily compute_E_family(const USeries& h, const USeries& d, unsigned k_max, std::size_t N);

/// (t−θ^q)𝑭 − g𝑬
USeries compute_h_bold(const USeries& E, const USeries& F, const USeries& g);

/// Residual (t−θ^{q²})𝑬^{(2)} − Δ𝑬 − g^q𝑬^{(1)}.
USeries E_residual(const USeries& E, const USeries& g, const USeries& delta);

/// g_0^⋆, ..., g_{k_max}^⋆.
std::vector<USeries> g_star(const USeries& g, const USeries& delta, unsigned k_max);

/// Convergent of depth D of (t−θ)/(g + Δ(t−θ^q)/(g^q + ...)), exact modulo
/// u^{q^{D+1}−1}; DepthInsufficient if that does not cover N.
USeries mu_continued_fraction(const USeries& g, const USeries& delta, unsigned depth, std::size_t N);
/// Smallest depth whose convergent is exact to precision N.
unsigned mu_depth_for(unsigned q, std::size_t N);
/// Residual μ(g + Δτμ) − (t−θ).
USeries mu_residual(const USeries& mu, const USeries& g, const USeries& delta);

struct DeformationSet {
  const Field* field;
  std::size_t N;
  USeries d, E, F, H;  // 𝒅, 𝑬, 𝑭, 𝒉
};
DeformationSet compute_deformations(const BaseFormSet& base);

}  // namespace dqm
