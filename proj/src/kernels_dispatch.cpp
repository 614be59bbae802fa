#include <cstdlib>
#include <cstring>

#include "dqm/kernels.hpp"

namespace dqm::kernels {

const KernelSet* avx2_unchecked();

const KernelSet* avx2() {
  static const KernelSet* set = [] () -> const KernelSet* {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("pclmul")) return avx2_unchecked();
#endif
    return nullptr;
  }();
  return set;
}

const KernelSet& active() {
  static const KernelSet* set = [] {
    const char* env = std::getenv("DQM_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar();
    const KernelSet* v = avx2();
    return v ? v : &scalar();
  }();
  return *set;
}

}  // namespace dqm::kernels
