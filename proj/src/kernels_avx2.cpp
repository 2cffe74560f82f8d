// AVX2 lane of the pair kernel. Compiled with -mavx2 -ffp-contract=off so the
// arithmetic (mul/add/sub/div/sqrt, all correctly rounded) matches the scalar
// reference bit for bit; exp(-y) arrives precomputed.
#if defined(__x86_64__)

#include "casimir/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace casimir {

namespace {

struct LayerVec {
  __m256d mu_x, eps_x, a_te, b_te, a_tm, b_tm;
};

inline LayerVec broadcast(const LayerKernelParams& l) {
  return {_mm256_set1_pd(l.mu_x), _mm256_set1_pd(l.eps_x), _mm256_set1_pd(l.a_te),
          _mm256_set1_pd(l.b_te), _mm256_set1_pd(l.a_tm), _mm256_set1_pd(l.b_tm)};
}

inline void amplitudes(const LayerVec& l, __m256d K3, __m256d k2, __m256d& r_te, __m256d& r_tm) {
  const __m256d s_te = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(l.a_te, k2), l.b_te));
  const __m256d s_tm = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(l.a_tm, k2), l.b_tm));
  const __m256d m_k3 = _mm256_mul_pd(l.mu_x, K3);
  const __m256d e_k3 = _mm256_mul_pd(l.eps_x, K3);
  r_te = _mm256_div_pd(_mm256_sub_pd(m_k3, s_te), _mm256_add_pd(m_k3, s_te));
  r_tm = _mm256_div_pd(_mm256_sub_pd(e_k3, s_tm), _mm256_add_pd(e_k3, s_tm));
}

} // namespace

void pair_kernel_avx2(const PairKernelParams& p, KernelMode mode, std::span<const double> y,
                      std::span<const double> exp_neg_y, std::span<double> out) {
  const size_t n = y.size();
  const LayerVec l1 = broadcast(p.l1), l2 = broadcast(p.l2);
  const __m256d inv_2d = _mm256_set1_pd(p.inv_2d);
  const __m256d xi_c = _mm256_set1_pd(p.xi_over_c);
  const __m256d one = _mm256_set1_pd(1.0);

  size_t i = 0;
  if (mode == KernelMode::kForce) {
    for (; i + 4 <= n; i += 4) {
      const __m256d yv = _mm256_loadu_pd(&y[i]);
      const __m256d ev = _mm256_loadu_pd(&exp_neg_y[i]);
      const __m256d K3 = _mm256_mul_pd(yv, inv_2d);
      const __m256d k2 = _mm256_mul_pd(_mm256_sub_pd(K3, xi_c), _mm256_add_pd(K3, xi_c));
      __m256d r1te, r1tm, r2te, r2tm;
      amplitudes(l1, K3, k2, r1te, r1tm);
      amplitudes(l2, K3, k2, r2te, r2tm);
      const __m256d x_te = _mm256_mul_pd(_mm256_mul_pd(r1te, r2te), ev);
      const __m256d x_tm = _mm256_mul_pd(_mm256_mul_pd(r1tm, r2tm), ev);
      const __m256d t_te = _mm256_div_pd(x_te, _mm256_sub_pd(one, x_te));
      const __m256d t_tm = _mm256_div_pd(x_tm, _mm256_sub_pd(one, x_tm));
      const __m256d y2 = _mm256_mul_pd(yv, yv);
      _mm256_storeu_pd(&out[i], _mm256_mul_pd(y2, _mm256_add_pd(t_te, t_tm)));
    }
  } else {
    // vectorize everything except log1p
    for (; i + 4 <= n; i += 4) {
      const __m256d yv = _mm256_loadu_pd(&y[i]);
      const __m256d ev = _mm256_loadu_pd(&exp_neg_y[i]);
      const __m256d K3 = _mm256_mul_pd(yv, inv_2d);
      const __m256d k2 = _mm256_mul_pd(_mm256_sub_pd(K3, xi_c), _mm256_add_pd(K3, xi_c));
      __m256d r1te, r1tm, r2te, r2tm;
      amplitudes(l1, K3, k2, r1te, r1tm);
      amplitudes(l2, K3, k2, r2te, r2tm);
      alignas(32) double x_te[4], x_tm[4];
      _mm256_store_pd(x_te, _mm256_mul_pd(_mm256_mul_pd(r1te, r2te), ev));
      _mm256_store_pd(x_tm, _mm256_mul_pd(_mm256_mul_pd(r1tm, r2tm), ev));
      for (int j = 0; j < 4; ++j)
        out[i + j] = y[i + j] * (std::log1p(-x_te[j]) + std::log1p(-x_tm[j]));
    }
  }
  if (i < n) {
    PairKernelParams tail = p;
    pair_kernel_scalar(tail, mode, y.subspan(i), exp_neg_y.subspan(i), out.subspan(i));
  }
}

} // namespace casimir

#endif // __x86_64__
