#include "casimir/kernels.hpp"

#include <cmath>

namespace casimir {

namespace {
inline void layer_amplitudes(const LayerKernelParams& l, double K3, double k2,
                             double& r_te, double& r_tm) {
  const double s_te = std::sqrt(l.a_te * k2 + l.b_te);
  const double s_tm = std::sqrt(l.a_tm * k2 + l.b_tm);
  r_te = (l.mu_x * K3 - s_te) / (l.mu_x * K3 + s_te);
  r_tm = (l.eps_x * K3 - s_tm) / (l.eps_x * K3 + s_tm);
  if (l.slab) {
    const double e_te = std::exp(-2.0 * s_te * l.thickness);
    const double e_tm = std::exp(-2.0 * s_tm * l.thickness);
    r_te = r_te * (1.0 - e_te) / (1.0 - r_te * r_te * e_te);
    r_tm = r_tm * (1.0 - e_tm) / (1.0 - r_tm * r_tm * e_tm);
  }
}
} // namespace

void pair_kernel_scalar(const PairKernelParams& p, KernelMode mode, std::span<const double> y,
                        std::span<const double> exp_neg_y, std::span<double> out) {
  const size_t n = y.size();
  for (size_t i = 0; i < n; ++i) {
    const double K3 = y[i] * p.inv_2d;
    const double k2 = (K3 - p.xi_over_c) * (K3 + p.xi_over_c);
    double r1te, r1tm, r2te, r2tm;
    layer_amplitudes(p.l1, K3, k2, r1te, r1tm);
    layer_amplitudes(p.l2, K3, k2, r2te, r2tm);
    const double x_te = r1te * r2te * exp_neg_y[i];
    const double x_tm = r1tm * r2tm * exp_neg_y[i];
    if (mode == KernelMode::kForce)
      out[i] = y[i] * y[i] * (x_te / (1.0 - x_te) + x_tm / (1.0 - x_tm));
    else
      out[i] = y[i] * (std::log1p(-x_te) + std::log1p(-x_tm));
  }
}

} // namespace casimir
