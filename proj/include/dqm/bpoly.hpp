#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dqm/apoly.hpp"

namespace dqm {

/// One term c·t^{e_t}·θ^{e_theta}.
struct Monom {
  FqCode c;
  std::size_t e_t;
  std::size_t e_theta;
  friend bool operator==(const Monom&, const Monom&) = default;
};

/// Element of F_q[t,θ], dense in t with F_q[θ] coefficients. Always trimmed.
class BPoly {
 public:
  explicit BPoly(const Field& f) : f_(&f) {}
  BPoly(const APoly& a);  // NOLINT: A embeds in A[t]
  BPoly(const Field& f, std::vector<APoly> t_coeffs);

  static BPoly t(const Field& f);
  static BPoly constant(const Field& f, FqCode c) { return BPoly(APoly::constant(f, c)); }
  /// t − θ^e
  static BPoly t_minus_theta_pow(const Field& f, std::size_t e);
  static BPoly from_monomials(const Field& f, const std::vector<Monom>& terms);

  const Field& field() const { return *f_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  /// kDegNegInf for zero.
  int deg_t() const { return c_.empty() ? kDegNegInf : int(c_.size()) - 1; }
  int deg_theta() const;
  bool is_t_free() const { return c_.size() <= 1; }
  /// Nonzero element of F_q (the unit group of F_q[t,θ]).
  bool is_unit() const { return c_.size() == 1 && c_[0].size() == 1; }
  const APoly& t_coeff(std::size_t k) const;
  const std::vector<APoly>& t_coeffs() const { return c_; }

  BPoly& operator+=(const BPoly& o);
  BPoly& operator-=(const BPoly& o);
  friend BPoly operator+(BPoly a, const BPoly& b) { return a += b; }
  friend BPoly operator-(BPoly a, const BPoly& b) { return a -= b; }
  friend BPoly operator*(const BPoly& a, const BPoly& b);
  BPoly& operator*=(const BPoly& o) { return *this = *this * o; }
  BPoly operator-() const;
  friend bool operator==(const BPoly& a, const BPoly& b) { return a.c_ == b.c_; }
  friend bool operator<(const BPoly& a, const BPoly& b);

  /// *this += a * b
  void add_product(const BPoly& a, const BPoly& b);
  BPoly scaled(FqCode s) const;
  BPoly times(const APoly& a) const;
  BPoly pow(unsigned n) const;
  /// τ^k on coefficients: θ ↦ θ^{q^k}, t fixed.
  BPoly twist(int k) const;
  /// ε: substitute t = θ.
  APoly eval_t_at_theta() const;
  /// Substitute t = x.
  APoly eval_t(const APoly& x) const;
  /// gcd of the θ-coefficients (monic), zero for zero.
  APoly content() const;
  BPoly exact_div(const APoly& d) const;
  /// Exact division in F_q[t,θ]; nullopt when d does not divide.
  std::optional<BPoly> try_exact_div(const BPoly& d) const;
  BPoly exact_div(const BPoly& d) const;
  /// Leading coefficient in (t-degree, θ-degree) order.
  FqCode leading_code() const { return c_.empty() ? FqCode(0) : c_.back().leading(); }

  /// Terms sorted by (e_t, e_theta).
  std::vector<Monom> monomials() const;
  std::string to_string() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  const Field* f_;
  std::vector<APoly> c_;
};

}  // namespace dqm
