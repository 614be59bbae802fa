#pragma once

#include <optional>
#include <vector>

#include "dqm/bpoly.hpp"

namespace dqm {

/// Homogeneous system Σ_j a[i][j]·x_j = 0, i < U, j < V, over F_q[t,θ].
struct SiegelSystem {
  const Field* field = nullptr;
  std::vector<std::vector<BPoly>> a;
  std::size_t U() const { return a.size(); }
  std::size_t V() const { return a.empty() ? 0 : a[0].size(); }
  /// Largest deg_t of an entry, 0 for the zero system.
  int d() const;
};

/// ⌈U·d/(V−U)⌉, requires U < V.
unsigned siegel_budget(std::size_t U, std::size_t V, int d);

struct SiegelSolution {
  std::vector<BPoly> x;
  unsigned D = 0;       // degree budget used
  int max_deg = 0;      // max_i deg_t x_i
  bool residual_zero = false;
};

/// Kernel vector of F_q(θ)-matrix m (rows × cols, entries in F_q[θ]) from
/// fraction-free elimination: first free column set to 1, other free columns
/// 0, denominators cleared, made primitive. nullopt when the kernel is zero.
std::optional<std::vector<APoly>> kernel_vector(std::vector<std::vector<APoly>> m, std::size_t cols);

/// Nonzero solution with deg_t x_i ≤ ⌈Ud/(V−U)⌉, primitive over F_q[θ] and
/// with the first nonzero component's leading coefficient 1.
/// InvalidArgument unless U < V; NoSolutionAtBudget if the kernel is empty.
SiegelSolution siegel_solve(const SiegelSystem& sys);

}  // namespace dqm
