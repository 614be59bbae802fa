#include "dqm/siegel.hpp"

#include <algorithm>

#include "dqm/error.hpp"
#include "dqm/ratfunc.hpp"

namespace dqm {

int SiegelSystem::d() const {
  int d = 0;
  for (const auto& row : a)
    for (const auto& e : row) d = std::max(d, e.deg_t());
  return d;
}

unsigned siegel_budget(std::size_t U, std::size_t V, int d) {
  if (U >= V) throw Error(ErrorCode::InvalidArgument, "Siegel system needs U < V");
  const std::size_t num = U * std::size_t(std::max(d, 0)), den = V - U;
  return unsigned((num + den - 1) / den);
}

std::optional<std::vector<APoly>> kernel_vector(std::vector<std::vector<APoly>> m, std::size_t cols) {
  if (cols == 0) return std::nullopt;
  const Field& f = m.empty() ? Field::get(2) : m[0][0].field();
  const std::size_t rows = m.size();
  // Bareiss: after each pivot the trailing block holds minors, so dividing by
  // the previous pivot is exact.
  APoly prev = APoly::constant(f, 1);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        APoly v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        m[i][j] = prev.is_one() ? std::move(v) : v.exact_div(prev);
      }
      m[i][c] = APoly(f);
    }
    prev = m[r][c];
    piv.push_back(c);
    ++r;
  }
  std::size_t free_col = cols;
  for (std::size_t c = 0, k = 0; c < cols; ++c) {
    if (k < piv.size() && piv[k] == c) {
      ++k;
      continue;
    }
    free_col = c;
    break;
  }
  if (free_col == cols) return std::nullopt;

  std::vector<RationalFunction> x(cols, RationalFunction(f));
  x[free_col] = RationalFunction(APoly::constant(f, 1));
  for (std::size_t k = piv.size(); k-- > 0;) {
    const std::size_t c = piv[k];
    if (c > free_col) continue;  // pivots right of the free column only see zeros
    RationalFunction s(f);
    for (std::size_t j = c + 1; j < cols; ++j)
      if (!m[k][j].is_zero() && !x[j].is_zero()) s += RationalFunction(m[k][j]) * x[j];
    x[c] = -(s / RationalFunction(m[k][c]));
  }
  APoly L = APoly::constant(f, 1);
  for (const auto& v : x) L = L * v.den().exact_div(APoly::gcd(L, v.den()));
  std::vector<APoly> out;
  out.reserve(cols);
  APoly g(f);
  for (const auto& v : x) {
    out.push_back(v.num() * L.exact_div(v.den()));
    g = APoly::gcd(g, out.back());
  }
  if (!g.is_one())
    for (auto& v : out) v = v.exact_div(g);
  return out;
}

SiegelSolution siegel_solve(const SiegelSystem& sys) {
  const std::size_t U = sys.U(), V = sys.V();
  if (V == 0 || U >= V) throw Error(ErrorCode::InvalidArgument, "Siegel system needs U < V");
  const Field& f = *sys.field;
  const int d = sys.d();
  const unsigned D = siegel_budget(U, V, d);
  // unknown (j, k) is the t^k coefficient of x_j; equation (i, s) the t^s coefficient of row i
  const std::size_t cols = V * (D + 1), rows = U * (std::size_t(d) + D + 1);
  std::vector<std::vector<APoly>> M(rows, std::vector<APoly>(cols, APoly(f)));
  for (std::size_t i = 0; i < U; ++i)
    for (std::size_t j = 0; j < V; ++j) {
      const BPoly& a = sys.a[i][j];
      for (std::size_t e = 0; e < a.t_coeffs().size(); ++e)
        for (std::size_t k = 0; k <= D; ++k) M[i * (d + D + 1) + e + k][j * (D + 1) + k] = a.t_coeff(e);
    }
  auto ker = kernel_vector(std::move(M), cols);
  if (!ker) throw Error(ErrorCode::NoSolutionAtBudget, "empty kernel at the Siegel budget");

  SiegelSolution sol;
  sol.D = D;
  for (std::size_t j = 0; j < V; ++j) {
    std::vector<APoly> tc((*ker).begin() + std::ptrdiff_t(j * (D + 1)), (*ker).begin() + std::ptrdiff_t((j + 1) * (D + 1)));
    sol.x.emplace_back(f, std::move(tc));
  }
  for (const auto& xi : sol.x)
    if (!xi.is_zero()) {
      FqCode s = f.inv(xi.leading_code());
      for (auto& y : sol.x) y = y.scaled(s);
      break;
    }
  sol.max_deg = 0;
  for (const auto& xi : sol.x) sol.max_deg = std::max(sol.max_deg, xi.deg_t());
  sol.residual_zero = true;
  for (std::size_t i = 0; i < U; ++i) {
    BPoly r(f);
    for (std::size_t j = 0; j < V; ++j) r.add_product(sys.a[i][j], sol.x[j]);
    if (!r.is_zero()) sol.residual_zero = false;
  }
  return sol;
}

}  // namespace dqm
