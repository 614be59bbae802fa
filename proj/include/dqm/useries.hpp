#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqm/bpoly.hpp"

namespace dqm {

enum class CoeffDomain { A, AT };  // F_q[θ] or F_q[t,θ]

/// Truncated series Σ_{n<N} c_n u^n with c_n ∈ F_q[t,θ]; N is exclusive.
class USeries {
 public:
  /// The zero series known to precision prec.
  USeries(const Field& f, std::size_t prec);
  USeries(const Field& f, std::size_t prec, std::vector<BPoly> coeffs);

  static USeries one(const Field& f, std::size_t prec);
  static USeries monomial(const Field& f, std::size_t prec, const BPoly& c, std::size_t n);

  const Field& field() const { return *f_; }
  std::size_t precision() const { return c_.size(); }
  const BPoly& coeff(std::size_t n) const;
  /// Coefficient or zero beyond the stored range (caller's responsibility).
  void set_coeff(std::size_t n, BPoly c);
  const std::vector<BPoly>& coeffs() const { return c_; }
  CoeffDomain domain() const;

  /// Least index with a nonzero coefficient, nullopt when zero to precision.
  std::optional<std::size_t> valuation() const;
  bool has_exact_valuation() const { return valuation().has_value(); }
  /// Throws ZeroToPrecision(N) when all stored coefficients vanish.
  std::size_t vanishing_order() const;
  bool is_zero() const { return !valuation(); }

  USeries truncated(std::size_t n) const;
  /// Multiply by u^k.
  USeries shifted(std::size_t k) const;
  USeries scaled(const BPoly& c) const;
  USeries operator-() const;
  friend USeries operator+(const USeries& a, const USeries& b);
  friend USeries operator-(const USeries& a, const USeries& b);
  friend USeries operator*(const USeries& a, const USeries& b);
  USeries& operator+=(const USeries& o) { return *this = *this + o; }
  USeries& operator-=(const USeries& o) { return *this = *this - o; }
  USeries& operator*=(const USeries& o) { return *this = *this * o; }
  /// Requires a constant term in F_q^*.
  USeries inverse() const;
  USeries pow(unsigned n) const;
  /// τ^k: c_n u^n ↦ τ^k(c_n) u^{q^k n}, precision q^k(N−1)+1.
  USeries tau(unsigned k = 1) const;
  /// τ^k on coefficients only (u fixed).
  USeries twist_coeffs(int k) const;
  /// ε: t ↦ θ coefficientwise.
  USeries specialize_t() const;
  /// deg_t of each coefficient, kDegNegInf for zero.
  std::vector<int> deg_t_profile() const;

  /// Exact equality including precision.
  friend bool operator==(const USeries& a, const USeries& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
  /// Equality of the first min(prec) coefficients.
  bool agrees_with(const USeries& o) const;
  /// Equality of the first n coefficients (both must have precision >= n).
  bool agrees_with(const USeries& o, std::size_t n) const;

  std::string to_string(std::size_t max_terms = 8) const;

 private:
  const Field* f_;
  std::vector<BPoly> c_;
};

}  // namespace dqm
