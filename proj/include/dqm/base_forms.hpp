#pragma once

#include <vector>

#include "dqm/kseries.hpp"

namespace dqm {

/// w/ê(w) = 1 + Σ_k ζ̂_k w^k with ê(w) = Σ w^{q^i}/d_i. Requires (q−1) | k.
RationalFunction zeta_hat(const Field& f, unsigned k);

/// Ê_k = −(ζ̂_k + Σ_{a monic} G̃_k(u_a)) for k ∈ {q−1, q²−1}, to precision N.
KSeries eisenstein_stripped(const Field& f, unsigned k, std::size_t N);

struct GDelta {
  USeries g, delta;
  KSeries a1, a2;  // â_1, â_2 as used in the derivation
};

/// g = [1]â_1 and Δ = [2]â_2 − g·â_1^q, gated on integrality and the
/// leading-term anchors (NormalizationGateFailed otherwise).
GDelta derive_g_delta(const Field& f, std::size_t N);

/// h = −u·w(v) with w ≡ 1 mod v and w^{q−1} = −Δ/v. The result has
/// precision N_Δ − q + 2. RootObstruction unless −Δ/v ≡ 1 mod v.
USeries derive_h(const USeries& delta);

/// E = Σ_{a monic} a·u_a to precision N.
USeries derive_E(const Field& f, std::size_t N);

/// â_0, ..., â_{i_max} from â_i = (g â_{i−1}^q + Δ â_{i−2}^{q²})/[i].
std::vector<KSeries> normalized_exp_coeffs(const USeries& g, const USeries& delta, unsigned i_max);

struct BaseFormSet {
  const Field* field;
  std::size_t N;
  USeries g, delta, h, E;
};

/// All four classical series to precision N (N ≥ 2), with the invariants checked.
BaseFormSet compute_base_forms(const Field& f, std::size_t N);

}  // namespace dqm
