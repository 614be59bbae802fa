#pragma once

#include "dqm/ratfunc.hpp"
#include "dqm/useries.hpp"

namespace dqm {

/// Series with coefficients in K[t]: an integral numerator over a common
/// denominator in A. Normalized so that den is monic and shares no factor
/// with the content of the numerator.
class KSeries {
 public:
  KSeries(USeries num, APoly den);
  explicit KSeries(USeries num);

  const Field& field() const { return num_.field(); }
  const USeries& num() const { return num_; }
  const APoly& den() const { return den_; }
  std::size_t precision() const { return num_.precision(); }
  bool is_integral() const { return den_.is_one(); }
  /// Throws NormalizationGateFailed when a denominator survives.
  const USeries& to_integral() const;
  RationalFunction coeff_t_free(std::size_t n) const;

  friend KSeries operator+(const KSeries& a, const KSeries& b);
  friend KSeries operator-(const KSeries& a, const KSeries& b);
  friend KSeries operator*(const KSeries& a, const KSeries& b);
  KSeries operator-() const { return KSeries(-num_, den_); }
  KSeries scaled(const RationalFunction& r) const;
  KSeries tau(unsigned k = 1) const { return KSeries(num_.tau(k), den_.twist(int(k))); }
  KSeries truncated(std::size_t n) const { return KSeries(num_.truncated(n), den_); }

 private:
  void normalize();
  USeries num_;
  APoly den_;
};

}  // namespace dqm
