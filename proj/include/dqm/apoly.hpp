#pragma once

#include <span>
#include <string>
#include <vector>

#include "dqm/field.hpp"

namespace dqm {

/// Dense element of A = F_q[θ]; coefficient i is that of θ^i. Always trimmed.
class APoly {
 public:
  explicit APoly(const Field& f) : f_(&f) {}
  APoly(const Field& f, std::vector<FqCode> coeffs);

  static APoly constant(const Field& f, FqCode c);
  static APoly monomial(const Field& f, FqCode c, std::size_t e);
  static APoly theta(const Field& f) { return monomial(f, 1, 1); }
  /// Integer n mapped into the prime subfield.
  static APoly integer(const Field& f, long long n) { return constant(f, f.from_int(n)); }

  const Field& field() const { return *f_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  int degree() const { return c_.empty() ? kDegNegInf : int(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  FqCode coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FqCode(0); }
  FqCode leading() const { return c_.empty() ? FqCode(0) : c_.back(); }
  std::span<const FqCode> coeffs() const { return c_; }

  APoly& operator+=(const APoly& o);
  APoly& operator-=(const APoly& o);
  APoly& operator*=(const APoly& o) { return *this = *this * o; }
  friend APoly operator+(APoly a, const APoly& b) { return a += b; }
  friend APoly operator-(APoly a, const APoly& b) { return a -= b; }
  friend APoly operator*(const APoly& a, const APoly& b);
  APoly operator-() const;
  friend bool operator==(const APoly& a, const APoly& b) { return a.c_ == b.c_; }
  friend bool operator<(const APoly& a, const APoly& b);

  /// *this += a * b
  void add_product(const APoly& a, const APoly& b);
  /// *this += s * θ^shift * a
  void add_scaled(FqCode s, const APoly& a, std::size_t shift = 0);

  APoly scaled(FqCode s) const;
  APoly shifted(std::size_t k) const;
  APoly pow(unsigned long long n) const;
  /// θ^e ↦ θ^{e q^k}. For k < 0 every exponent must be divisible by q^{|k|},
  /// otherwise NonDivisibleExponent.
  APoly twist(int k) const;
  APoly monic() const;

  /// Euclidean division; throws NotAUnit when b is zero.
  static void divmod(const APoly& a, const APoly& b, APoly& quo, APoly& rem);
  APoly operator%(const APoly& b) const;
  /// Throws NormalizationGateFailed when b does not divide *this.
  APoly exact_div(const APoly& b) const;
  bool divides(const APoly& a) const;
  static APoly gcd(APoly a, APoly b);

  /// Value at θ = x (x given as an element of A).
  APoly compose(const APoly& x) const;
  std::string to_string() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const Field* f_;
  std::vector<FqCode> c_;
};

/// [i] = θ^{q^i} − θ
APoly bracket(const Field& f, unsigned i);
/// d_0 = 1, d_i = [i]·d_{i−1}^q
APoly carlitz_factorial(const Field& f, unsigned i);

}  // namespace dqm
