#include "casimir/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace casimir {

namespace {

enum class SimdChoice { kAuto, kScalar, kAvx2 };

SimdChoice simd_choice() {
  static SimdChoice c = [] {
    const char* env = std::getenv("CASIMIR_SIMD");
    if (env != nullptr) {
      if (std::strcmp(env, "scalar") == 0) return SimdChoice::kScalar;
      if (std::strcmp(env, "avx2") == 0) return SimdChoice::kAvx2;
    }
    return SimdChoice::kAuto;
  }();
  return c;
}

bool avx2_available() {
#if defined(__x86_64__)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

bool use_avx2() {
  switch (simd_choice()) {
    case SimdChoice::kScalar: return false;
    case SimdChoice::kAvx2: return avx2_available();
    case SimdChoice::kAuto: return avx2_available();
  }
  return false;
}

} // namespace

PairKernelFn select_pair_kernel(const PairKernelParams& p) {
  // the slab correction needs exp() per node; only the scalar path carries it
  if (p.l1.slab || p.l2.slab) return &pair_kernel_scalar;
#if defined(__x86_64__)
  if (use_avx2()) return &pair_kernel_avx2;
#endif
  return &pair_kernel_scalar;
}

std::string active_kernel_name() {
  return use_avx2() ? "avx2" : "scalar";
}

} // namespace casimir
