#pragma once

#include <string>

#include "dqm/apoly.hpp"

namespace dqm {

/// Element of K = F_q(θ): num/den with den monic and gcd(num, den) = 1.
class RationalFunction {
 public:
  explicit RationalFunction(const Field& f) : num_(f), den_(APoly::constant(f, 1)) {}
  RationalFunction(APoly num);  // NOLINT
  RationalFunction(APoly num, APoly den);

  const Field& field() const { return num_.field(); }
  const APoly& num() const { return num_; }
  const APoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  /// Throws NotAUnit for zero.
  RationalFunction inverse() const;
  RationalFunction twist(int k) const { return RationalFunction(num_.twist(k), den_.twist(k)); }
  std::string to_string() const;

 private:
  APoly num_, den_;
};

}  // namespace dqm
