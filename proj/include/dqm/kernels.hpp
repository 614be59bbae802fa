#pragma once

#include <cstddef>

#include "dqm/field.hpp"

namespace dqm::kernels {

// Inner loops of dense F_q[θ] arithmetic. All buffers hold FqCode values and
// every routine accumulates into its output.
struct KernelSet {
  const char* name;
  /// out[0 .. na+nb-1) += a * b
  void (*mul_acc)(const Field&, const FqCode* a, std::size_t na, const FqCode* b, std::size_t nb, FqCode* out);
  /// y += s * x
  void (*axpy)(const Field&, FqCode s, const FqCode* x, std::size_t n, FqCode* y);
  /// y += x
  void (*add)(const Field&, const FqCode* x, std::size_t n, FqCode* y);
  /// y -= x
  void (*sub)(const Field&, const FqCode* x, std::size_t n, FqCode* y);
};

const KernelSet& scalar();
/// nullptr when the build or the CPU lacks AVX2 and PCLMUL.
const KernelSet* avx2();
/// The set used by the polynomial types. DQM_KERNELS=scalar forces the
/// reference path.
const KernelSet& active();

}  // namespace dqm::kernels
