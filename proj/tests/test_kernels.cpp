#include <doctest.h>

#include <random>
#include <vector>

#include "dqm/kernels.hpp"

using namespace dqm;

namespace {

std::vector<FqCode> random_vec(std::mt19937_64& rng, unsigned q, std::size_t n) {
  std::vector<FqCode> v(n);
  for (auto& x : v) x = FqCode(rng() % q);
  return v;
}

// Schoolbook product through the field tables only.
std::vector<FqCode> naive_mul(const Field& f, const std::vector<FqCode>& a, const std::vector<FqCode>& b) {
  std::vector<FqCode> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  return r;
}

}  // namespace

TEST_CASE("scalar and SIMD kernels agree with the naive product") {
  std::mt19937_64 rng(7);
  std::vector<const kernels::KernelSet*> sets{&kernels::scalar()};
  if (kernels::avx2()) sets.push_back(kernels::avx2());
  MESSAGE("active kernel set: " << kernels::active().name);
  const std::size_t sizes[] = {1, 2, 7, 31, 32, 33, 63, 64, 65, 100, 257, 700};
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 17u, 251u}) {
    const Field& f = Field::get(q);
    for (std::size_t na : sizes)
      for (std::size_t nb : sizes) {
        if ((na * nb) % 3 != 0 && na > 64 && nb > 64) continue;
        auto a = random_vec(rng, q, na), b = random_vec(rng, q, nb);
        auto init = random_vec(rng, q, na + nb - 1);
        auto want = naive_mul(f, a, b);
        for (std::size_t k = 0; k < want.size(); ++k) want[k] = f.add(want[k], init[k]);
        for (auto* s : sets) {
          auto out = init;
          s->mul_acc(f, a.data(), na, b.data(), nb, out.data());
          CAPTURE(q);
          CAPTURE(na);
          CAPTURE(nb);
          CAPTURE(s->name);
          CHECK(out == want);
        }
      }
  }
}

TEST_CASE("axpy, add and sub agree across kernel sets") {
  std::mt19937_64 rng(11);
  std::vector<const kernels::KernelSet*> sets{&kernels::scalar()};
  if (kernels::avx2()) sets.push_back(kernels::avx2());
  for (unsigned q : {2u, 3u, 4u, 5u, 9u, 13u, 16u, 101u, 127u, 131u, 256u}) {
    const Field& f = Field::get(q);
    for (std::size_t n : {0ul, 1ul, 31ul, 32ul, 77ul, 1000ul}) {
      auto x = random_vec(rng, q, n), y = random_vec(rng, q, n);
      FqCode s = FqCode(rng() % q);
      std::vector<FqCode> w_axpy(y), w_add(y), w_sub(y);
      for (std::size_t i = 0; i < n; ++i) {
        w_axpy[i] = f.add(y[i], f.mul(s, x[i]));
        w_add[i] = f.add(y[i], x[i]);
        w_sub[i] = f.sub(y[i], x[i]);
      }
      for (auto* k : sets) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(k->name);
        auto r1 = y, r2 = y, r3 = y;
        k->axpy(f, s, x.data(), n, r1.data());
        k->add(f, x.data(), n, r2.data());
        k->sub(f, x.data(), n, r3.data());
        CHECK(r1 == w_axpy);
        CHECK(r2 == w_add);
        CHECK(r3 == w_sub);
      }
    }
  }
}
