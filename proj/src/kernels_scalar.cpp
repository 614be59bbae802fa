#include <cstdint>
#include <vector>

#include "dqm/kernels.hpp"

namespace dqm::kernels {
namespace {

using u64 = std::uint64_t;

void pack_bits(const FqCode* a, std::size_t n, std::vector<u64>& w) {
  w.assign((n + 63) / 64, 0);
  for (std::size_t i = 0; i < n; ++i) w[i >> 6] |= u64(a[i] & 1) << (i & 63);
}

// Portable carry-less 64x64 -> 128 multiply.
inline void clmul64(u64 x, u64 y, u64& lo, u64& hi) {
  lo = 0;
  hi = 0;
  while (x) {
    int k = __builtin_ctzll(x);
    x &= x - 1;
    lo ^= y << k;
    if (k) hi ^= y >> (64 - k);
  }
}

void mul_acc_gf2(const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out) {
  std::vector<u64> wa, wb;
  pack_bits(a, na, wa);
  pack_bits(b, nb, wb);
  std::vector<u64> r(wa.size() + wb.size(), 0);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (!wa[i]) continue;
    for (std::size_t j = 0; j < wb.size(); ++j) {
      u64 lo, hi;
      clmul64(wa[i], wb[j], lo, hi);
      r[i + j] ^= lo;
      r[i + j + 1] ^= hi;
    }
  }
  std::size_t n = na + nb - 1;
  for (std::size_t k = 0; k < n; ++k) out[k] ^= FqCode((r[k >> 6] >> (k & 63)) & 1);
}

void mul_acc_prime(const Field& f, const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out) {
  const u64 p = f.p();
  std::vector<u64> acc(na + nb - 1, 0);
  for (std::size_t i = 0; i < na; ++i) {
    u64 ai = a[i];
    if (!ai) continue;
    u64* row = acc.data() + i;
    for (std::size_t j = 0; j < nb; ++j) row[j] += ai * b[j];
  }
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = FqCode((out[k] + acc[k]) % p);
}

void mul_acc_table(const Field& f, const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out) {
  for (std::size_t i = 0; i < na; ++i) {
    if (!a[i]) continue;
    const FqCode* row = f.mul_row(a[i]);
    for (std::size_t j = 0; j < nb; ++j) out[i + j] = f.add(out[i + j], row[b[j]]);
  }
}

void mul_acc(const Field& f, const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out) {
  if (na == 0 || nb == 0) return;
  if (f.q() == 2)
    mul_acc_gf2(a, na, b, nb, out);
  else if (f.is_prime())
    mul_acc_prime(f, a, na, b, nb, out);
  else
    mul_acc_table(f, a, na, b, nb, out);
}

void axpy(const Field& f, FqCode s, const FqCode* x, std::size_t n, FqCode* y) {
  if (!s) return;
  const FqCode* row = f.mul_row(s);
  for (std::size_t i = 0; i < n; ++i) y[i] = f.add(y[i], row[x[i]]);
}

void add(const Field& f, const FqCode* x, std::size_t n, FqCode* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = f.add(y[i], x[i]);
}

void sub(const Field& f, const FqCode* x, std::size_t n, FqCode* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = f.sub(y[i], x[i]);
}

const KernelSet kScalar{"scalar", mul_acc, axpy, add, sub};

}  // namespace

const KernelSet& scalar() { return kScalar; }

}  // namespace dqm::kernels
