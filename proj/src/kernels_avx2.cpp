// AVX2 / PCLMUL variants of the F_q[θ] kernels. Compiled with -mavx2 -mpclmul;
// only reached after a runtime CPU check.
#include "dqm/kernels.hpp"

#if defined(DQM_BUILD_AVX2)

#include <immintrin.h>

#include <cstdint>
#include <vector>

namespace dqm::kernels {
namespace {

using u64 = std::uint64_t;

void pack_bits(const FqCode* a, std::size_t n, std::vector<u64>& w) {
  w.assign((n + 63) / 64 + 1, 0);
  auto* w32 = reinterpret_cast<std::uint32_t*>(w.data());
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    v = _mm256_slli_epi16(v, 7);
    w32[i >> 5] = std::uint32_t(_mm256_movemask_epi8(v));
  }
  for (; i < n; ++i) w[i >> 6] |= u64(a[i] & 1) << (i & 63);
}

inline __m256i expand32(std::uint32_t bits) {
  const __m256i shuf = _mm256_setr_epi8(0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1,
                                        2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3);
  const __m256i sel = _mm256_set1_epi64x(0x8040201008040201LL);
  __m256i v = _mm256_shuffle_epi8(_mm256_set1_epi32(int(bits)), shuf);
  v = _mm256_cmpeq_epi8(_mm256_and_si256(v, sel), sel);
  return _mm256_and_si256(v, _mm256_set1_epi8(1));
}

void mul_acc_gf2(const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out) {
  std::vector<u64> wa, wb;
  pack_bits(a, na, wa);
  pack_bits(b, nb, wb);
  std::size_t la = (na + 63) / 64, lb = (nb + 63) / 64;
  std::vector<u64> r(la + lb + 1, 0);
  for (std::size_t i = 0; i < la; ++i) {
    if (!wa[i]) continue;
    __m128i x = _mm_cvtsi64_si128((long long)wa[i]);
    std::size_t j = 0;
    for (; j + 2 <= lb; j += 2) {
      __m128i y = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&wb[j]));
      __m128i p0 = _mm_clmulepi64_si128(x, y, 0x00);
      __m128i p1 = _mm_clmulepi64_si128(x, y, 0x10);
      // p0 covers words j, j+1; p1 covers j+1, j+2
      __m128i acc0 = _mm_loadu_si128(reinterpret_cast<__m128i*>(&r[i + j]));
      acc0 = _mm_xor_si128(acc0, p0);
      _mm_storeu_si128(reinterpret_cast<__m128i*>(&r[i + j]), acc0);
      __m128i acc1 = _mm_loadu_si128(reinterpret_cast<__m128i*>(&r[i + j + 1]));
      acc1 = _mm_xor_si128(acc1, p1);
      _mm_storeu_si128(reinterpret_cast<__m128i*>(&r[i + j + 1]), acc1);
    }
    for (; j < lb; ++j) {
      __m128i y = _mm_cvtsi64_si128((long long)wb[j]);
      __m128i p = _mm_clmulepi64_si128(x, y, 0x00);
      r[i + j] ^= u64(_mm_cvtsi128_si64(p));
      r[i + j + 1] ^= u64(_mm_extract_epi64(p, 1));
    }
  }
  const std::size_t n = na + nb - 1;
  const auto* r32 = reinterpret_cast<const std::uint32_t*>(r.data());
  std::size_t k = 0;
  for (; k + 32 <= n; k += 32) {
    std::uint32_t bits = r32[k >> 5];
    if (!bits) continue;
    __m256i o = _mm256_loadu_si256(reinterpret_cast<__m256i*>(out + k));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k), _mm256_xor_si256(o, expand32(bits)));
  }
  for (; k < n; ++k) out[k] ^= FqCode((r[k >> 6] >> (k & 63)) & 1);
}

inline __m256i lut_for(const Field& f, FqCode s) {
  alignas(16) FqCode row[16] = {};
  const FqCode* m = f.mul_row(s);
  for (unsigned i = 0; i < f.q(); ++i) row[i] = m[i];
  return _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(row)));
}

// Characteristic 2, q in {4, 8, 16}: table lookup by pshufb, XOR addition.
void mul_acc_char2_lut(const Field& f, const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out) {
  for (std::size_t i = 0; i < na; ++i) {
    if (!a[i]) continue;
    __m256i lut = lut_for(f, a[i]);
    FqCode* o = out + i;
    std::size_t j = 0;
    for (; j + 32 <= nb; j += 32) {
      __m256i v = _mm256_shuffle_epi8(lut, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j)));
      __m256i y = _mm256_loadu_si256(reinterpret_cast<__m256i*>(o + j));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(o + j), _mm256_xor_si256(y, v));
    }
    const FqCode* row = f.mul_row(a[i]);
    for (; j < nb; ++j) o[j] ^= row[b[j]];
  }
}

// Odd prime p <= 13: 16-bit lane accumulation with periodic reduction.
void mul_acc_small_prime(const Field& f, const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out) {
  const unsigned p = f.p();
  const std::size_t nbp = (nb + 15) & ~std::size_t(15);
  std::vector<std::uint16_t> b16(nbp, 0), acc(na + nbp, 0);
  for (std::size_t j = 0; j < nb; ++j) b16[j] = b[j];
  const unsigned rows_per_flush = 65535u / ((p - 1) * (p - 1));
  unsigned rows = 0;
  for (std::size_t i = 0; i < na; ++i) {
    if (!a[i]) continue;
    if (rows == rows_per_flush) {
      for (auto& x : acc) x = std::uint16_t(x % p);
      rows = 0;
    }
    ++rows;
    __m256i s = _mm256_set1_epi16(short(a[i]));
    std::uint16_t* o = acc.data() + i;
    for (std::size_t j = 0; j < nbp; j += 16) {
      __m256i v = _mm256_mullo_epi16(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(&b16[j])), s);
      __m256i y = _mm256_loadu_si256(reinterpret_cast<__m256i*>(o + j));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(o + j), _mm256_add_epi16(y, v));
    }
  }
  const std::size_t n = na + nb - 1;
  for (std::size_t k = 0; k < n; ++k) out[k] = FqCode((out[k] + acc[k] % p) % p);
}

void mul_acc(const Field& f, const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out) {
  if (na == 0 || nb == 0) return;
  if (f.q() == 2) {
    if (na < 8 || nb < 8)  // packing does not pay off
      scalar().mul_acc(f, a, na, b, nb, out);
    else
      mul_acc_gf2(a, na, b, nb, out);
  } else if (f.p() == 2 && f.q() <= 16) {
    if (na > nb)
      mul_acc_char2_lut(f, b, nb, a, na, out);
    else
      mul_acc_char2_lut(f, a, na, b, nb, out);
  } else if (f.is_prime() && f.p() <= 13) {
    if (na > nb)
      mul_acc_small_prime(f, b, nb, a, na, out);
    else
      mul_acc_small_prime(f, a, na, b, nb, out);
  } else {
    scalar().mul_acc(f, a, na, b, nb, out);
  }
}

inline __m256i add_mod(__m256i y, __m256i x, __m256i P) {
  __m256i s = _mm256_add_epi8(y, x);
  return _mm256_min_epu8(s, _mm256_sub_epi8(s, P));
}

inline __m256i sub_mod(__m256i y, __m256i x, __m256i P) {
  __m256i s = _mm256_sub_epi8(y, x);
  return _mm256_min_epu8(s, _mm256_add_epi8(s, P));
}

void axpy(const Field& f, FqCode s, const FqCode* x, std::size_t n, FqCode* y) {
  if (!s) return;
  const bool char2 = f.p() == 2;
  if (f.q() > 16 || (!char2 && !f.is_prime())) {
    scalar().axpy(f, s, x, n, y);
    return;
  }
  __m256i lut = lut_for(f, s);
  __m256i P = _mm256_set1_epi8(char(f.p()));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_shuffle_epi8(lut, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i)));
    __m256i w = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
    w = char2 ? _mm256_xor_si256(w, v) : add_mod(w, v, P);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), w);
  }
  if (i < n) scalar().axpy(f, s, x + i, n - i, y + i);
}

void add(const Field& f, const FqCode* x, std::size_t n, FqCode* y) {
  const bool char2 = f.p() == 2;
  if (!char2 && !(f.is_prime() && f.p() <= 127)) {
    scalar().add(f, x, n, y);
    return;
  }
  __m256i P = _mm256_set1_epi8(char(f.p()));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i w = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
    w = char2 ? _mm256_xor_si256(w, v) : add_mod(w, v, P);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), w);
  }
  if (i < n) scalar().add(f, x + i, n - i, y + i);
}

void sub(const Field& f, const FqCode* x, std::size_t n, FqCode* y) {
  const bool char2 = f.p() == 2;
  if (!char2 && !(f.is_prime() && f.p() <= 127)) {
    scalar().sub(f, x, n, y);
    return;
  }
  __m256i P = _mm256_set1_epi8(char(f.p()));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i w = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
    w = char2 ? _mm256_xor_si256(w, v) : sub_mod(w, v, P);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), w);
  }
  if (i < n) scalar().sub(f, x + i, n - i, y + i);
}

const KernelSet kAvx2{"avx2", mul_acc, axpy, add, sub};

}  // namespace

const KernelSet* avx2_unchecked() { return &kAvx2; }

}  // namespace dqm::kernels

#else

namespace dqm::kernels {
const KernelSet* avx2_unchecked() { return nullptr; }
}  // namespace dqm::kernels

#endif
