#pragma once

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

namespace dqm {

/// An element of F_q stored as the integer whose base-p digits are its
/// coordinates in the polynomial basis 1, x, ..., x^{e-1} of F_p[x]/(f).
using FqCode = std::uint8_t;

/// Degree of the zero polynomial.
inline constexpr int kDegNegInf = INT_MIN;

class Field {
 public:
  /// Interned instance for q; throws InvalidArgument unless q is a prime
  /// power with q <= 256.
  static const Field& get(unsigned q);

  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned degree() const { return e_; }
  bool is_prime() const { return e_ == 1; }

  FqCode add(FqCode a, FqCode b) const { return add_[idx(a, b)]; }
  FqCode sub(FqCode a, FqCode b) const { return add_[idx(a, neg_[b])]; }
  FqCode mul(FqCode a, FqCode b) const { return mul_[idx(a, b)]; }
  FqCode neg(FqCode a) const { return neg_[a]; }
  /// Throws NotAUnit for zero.
  FqCode inv(FqCode a) const;
  FqCode pow(FqCode a, unsigned long long n) const;
  /// Image of an integer in the prime subfield.
  FqCode from_int(long long n) const;

  /// Row of the multiplication table: mul_row(s)[x] == s*x.
  const FqCode* mul_row(FqCode s) const { return &mul_[std::size_t(s) * q_]; }
  /// Coefficients of the defining modulus (low to high, monic, degree e).
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  explicit Field(unsigned q);
  std::size_t idx(FqCode a, FqCode b) const { return std::size_t(a) * q_ + b; }

  unsigned q_, p_, e_;
  std::vector<unsigned> modulus_;
  std::vector<FqCode> add_, mul_, neg_, inv_;
};

/// A field element bound to its field, for user-facing arithmetic.
class FqElem {
 public:
  FqElem(const Field& f, FqCode c) : f_(&f), c_(c) {}
  const Field& field() const { return *f_; }
  FqCode code() const { return c_; }
  bool is_zero() const { return c_ == 0; }

  friend FqElem operator+(FqElem a, FqElem b) { return {*a.f_, a.f_->add(a.c_, b.c_)}; }
  friend FqElem operator-(FqElem a, FqElem b) { return {*a.f_, a.f_->sub(a.c_, b.c_)}; }
  friend FqElem operator*(FqElem a, FqElem b) { return {*a.f_, a.f_->mul(a.c_, b.c_)}; }
  FqElem operator-() const { return {*f_, f_->neg(c_)}; }
  FqElem inverse() const { return {*f_, f_->inv(c_)}; }
  friend bool operator==(FqElem a, FqElem b) { return a.f_ == b.f_ && a.c_ == b.c_; }

 private:
  const Field* f_;
  FqCode c_;
};

}  // namespace dqm
