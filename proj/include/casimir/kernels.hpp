#pragma once

#include <span>
#include <string>

namespace casimir {

// Per-(layer, xi) constants of the diagonal (isotropic or uniaxial)
// reflection amplitudes:
//   r_TE = (mu_x K3 - sqrt(a_te k^2 + b_te)) / (mu_x K3 + sqrt(a_te k^2 + b_te))
//   r_TM = (eps_x K3 - sqrt(a_tm k^2 + b_tm)) / (eps_x K3 + sqrt(a_tm k^2 + b_tm))
// with a_te = mu_x/mu_z, b_te = mu_x eps_x (xi/c)^2, and TM by eps<->mu.
// The same square roots are the axial decay constants used by the slab
// correction.
struct LayerKernelParams {
  double mu_x = 1.0, eps_x = 1.0;
  double a_te = 1.0, b_te = 0.0;
  double a_tm = 1.0, b_tm = 0.0;
  bool slab = false;
  double thickness = 0.0;
};

struct PairKernelParams {
  LayerKernelParams l1, l2;
  double inv_2d = 0.0;      // 1 / (2 d): K3 = y * inv_2d
  double xi_over_c = 0.0;   // xi / c
};

enum class KernelMode { kForce, kEnergy };

// out[i] = y^2 * sum_p x_p/(1-x_p)          (force)
//        = y   * sum_p log1p(-x_p)          (energy)
// with x_p = r1_p r2_p exp_neg_y[i].
using PairKernelFn = void (*)(const PairKernelParams&, KernelMode,
                              std::span<const double> y,
                              std::span<const double> exp_neg_y,
                              std::span<double> out);

void pair_kernel_scalar(const PairKernelParams&, KernelMode, std::span<const double> y,
                        std::span<const double> exp_neg_y, std::span<double> out);

#if defined(__x86_64__)
void pair_kernel_avx2(const PairKernelParams&, KernelMode, std::span<const double> y,
                      std::span<const double> exp_neg_y, std::span<double> out);
#endif

// Runtime-selected variant: AVX2 when the CPU supports it, scalar otherwise.
// CASIMIR_SIMD=scalar|avx2|auto overrides (slab layers always take the
// scalar path).
PairKernelFn select_pair_kernel(const PairKernelParams& p);
std::string active_kernel_name();

} // namespace casimir
