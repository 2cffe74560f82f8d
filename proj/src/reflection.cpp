#include "casimir/reflection.hpp"

#include <cmath>

namespace casimir {

namespace {
using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);

double sq(double x) { return x * x; }

// branch with decaying transmitted field on the imaginary axis:
// Re Q > 0, or Im Q > 0 on the boundary
cd positive_branch(cd q) {
  if (q.real() < 0.0 || (q.real() == 0.0 && q.imag() < 0.0)) return -q;
  return q;
}

// solve M x = b for two right-hand sides by Gaussian elimination with
// partial pivoting (4x4 complex)
void solve4_two(cd M[4][4], cd b1[4], cd b2[4]) {
  int piv[4] = {0, 1, 2, 3};
  for (int c = 0; c < 4; ++c) {
    int best = c;
    double mag = std::abs(M[piv[c]][c]);
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(M[piv[r]][c]) > mag) { mag = std::abs(M[piv[r]][c]); best = r; }
    std::swap(piv[c], piv[best]);
    const cd p = M[piv[c]][c];
    if (p == cd(0.0, 0.0)) throw SolverError("biaxial solve: singular boundary system");
    for (int r = c + 1; r < 4; ++r) {
      const cd m = M[piv[r]][c] / p;
      if (m == cd(0.0, 0.0)) continue;
      for (int cc = c; cc < 4; ++cc) M[piv[r]][cc] -= m * M[piv[c]][cc];
      b1[piv[r]] -= m * b1[piv[c]];
      b2[piv[r]] -= m * b2[piv[c]];
    }
  }
  for (cd* b : {b1, b2}) {
    cd x[4];
    for (int r = 3; r >= 0; --r) {
      cd acc = b[piv[r]];
      for (int c = r + 1; c < 4; ++c) acc -= M[piv[r]][c] * x[c];
      x[r] = acc / M[piv[r]][r];
    }
    for (int r = 0; r < 4; ++r) b[r] = x[r];
  }
}

struct Lmat {
  double L13, L14, L23, L24, L31, L32, L41, L42;
  double A, B, C1, C2, C;
};

Lmat build_L(const DiagonalTensorResponse& t, const TransverseWave& w) {
  const double s = std::sin(w.phi), c = std::cos(w.phi);
  const double kc2 = sq(w.k_par * kLightSpeed / w.xi); // -k^2 c^2 / omega^2 at omega = i xi
  Lmat L;
  L.L13 = -(t.mu_xx - t.mu_yy) * s * c;
  L.L24 = -L.L13;
  L.L14 = -kc2 / t.eps_zz - t.mu_yy * c * c - t.mu_xx * s * s;
  L.L23 = t.mu_xx * c * c + t.mu_yy * s * s;
  L.L31 = (t.eps_xx - t.eps_yy) * s * c;
  L.L42 = -L.L31;
  L.L32 = kc2 / t.mu_zz + t.eps_yy * c * c + t.eps_xx * s * s;
  L.L41 = -t.eps_xx * c * c - t.eps_yy * s * s;
  L.A = L.L13 * L.L31 + L.L14 * L.L41;
  L.B = L.L23 * L.L32 + L.L24 * L.L42;
  L.C1 = L.L13 * L.L32 + L.L14 * L.L42;
  L.C2 = L.L23 * L.L31 + L.L24 * L.L41;
  L.C = L.C1 * L.C2;
  return L;
}

// Decoupled TE/TM interface blocks, exact whenever C1 = C2 = 0 (in-plane
// isotropy, or phi on a tensor axis).
ReflectionMatrix decoupled_blocks(const Lmat& L, double q_in) {
  ReflectionMatrix r;
  const cd QA = positive_branch(std::sqrt(cd(L.L14 * L.L41, 0.0)));
  const cd QB = positive_branch(std::sqrt(cd(L.L23 * L.L32, 0.0)));
  const cd G = -L.L41 * q_in / QA;
  r.tm_tm = ((G - 1.0) / (G + 1.0)).real();
  r.te_te = ((q_in * QB - L.L32) / (q_in * QB + L.L32)).real();
  return r;
}
} // namespace

ReflectionMatrix fresnel_metal(double eps1, const TransverseWave& w) {
  const double K3 = w.K3();
  const double K1 = std::sqrt(sq(w.k_par) + eps1 * sq(w.xi / kLightSpeed));
  ReflectionMatrix r;
  r.te_te = (K3 - K1) / (K3 + K1);
  r.tm_tm = (eps1 * K3 - K1) / (eps1 * K3 + K1);
  return r;
}

ReflectionMatrix fresnel_isotropic_mm(double eps2, double mu2, const TransverseWave& w) {
  const double K3 = w.K3();
  const double K2 = std::sqrt(sq(w.k_par) + mu2 * eps2 * sq(w.xi / kLightSpeed));
  ReflectionMatrix r;
  r.te_te = (mu2 * K3 - K2) / (mu2 * K3 + K2);
  r.tm_tm = (eps2 * K3 - K2) / (eps2 * K3 + K2);
  return r;
}

ReflectionMatrix uniaxial_reflection(const DiagonalTensorResponse& t, const TransverseWave& w) {
  if (t.eps_xx != t.eps_yy || t.mu_xx != t.mu_yy)
    throw std::domain_error("uniaxial_reflection requires in-plane isotropy");
  const double K3 = w.K3();
  const double k2 = sq(w.k_par), x2 = sq(w.xi / kLightSpeed);
  const double s_te = std::sqrt((t.mu_xx / t.mu_zz) * k2 + t.mu_xx * t.eps_xx * x2);
  const double s_tm = std::sqrt((t.eps_xx / t.eps_zz) * k2 + t.eps_xx * t.mu_xx * x2);
  ReflectionMatrix r;
  r.te_te = (t.mu_xx * K3 - s_te) / (t.mu_xx * K3 + s_te);
  r.tm_tm = (t.eps_xx * K3 - s_tm) / (t.eps_xx * K3 + s_tm);
  return r;
}

ReflectionMatrix biaxial_exact_reflection(const DiagonalTensorResponse& t,
                                          const TransverseWave& w, BiaxialSolveTrace* trace) {
  if (!(w.xi > 0.0)) throw std::domain_error("biaxial_exact_reflection: xi must be > 0");
  const Lmat L = build_L(t, w);
  const double q_in = kLightSpeed * w.K3() / w.xi; // scaled c q_in / omega, real > 0

  BiaxialSolveTrace tr;
  tr.L13 = L.L13; tr.L14 = L.L14; tr.L23 = L.L23; tr.L24 = L.L24;
  tr.L31 = L.L31; tr.L32 = L.L32; tr.L41 = L.L41; tr.L42 = L.L42;
  tr.A = L.A; tr.B = L.B; tr.C1 = L.C1; tr.C2 = L.C2; tr.C = L.C;
  tr.q_in_scaled = q_in;

  // exactly decoupled polarizations (phi on a tensor axis, or in-plane
  // isotropy): the mode ratios below would divide by zero
  if (L.C1 == 0.0 || L.C2 == 0.0) {
    tr.used_fallback = true;
    ReflectionMatrix r = decoupled_blocks(L, q_in);
    if (trace) *trace = tr;
    return r;
  }

  // The solve degrades only when the root splitting disc collapses relative
  // to the coupling scales themselves, which needs C < 0 (opposing electric
  // and magnetic anisotropies) and marks a defective double root.
  const double coupling2 = sq(L.A - L.B) + 4.0 * std::fabs(L.C);
  const cd disc = std::sqrt(cd(sq(L.A - L.B) + 4.0 * L.C, 0.0));
  if (std::norm(disc) < 1e-16 * coupling2)
    throw SolverError("biaxial solve: coalescing axial roots with non-vanishing coupling");
  cd qq1 = 0.5 * (L.A + L.B + disc);
  cd qq2 = 0.5 * (L.A + L.B - disc);
  // label roots by proximity: q1^2 tracks A (the e_x-dominant branch), q2^2
  // tracks B, so the stabilized ratio denominators below stay O(|A - B|)
  if (std::abs(qq1 - L.A) + std::abs(qq2 - L.B) > std::abs(qq2 - L.A) + std::abs(qq1 - L.B))
    std::swap(qq1, qq2);
  const cd q1 = positive_branch(std::sqrt(qq1));
  const cd q2 = positive_branch(std::sqrt(qq2));
  tr.q1 = q1;
  tr.q2 = q2;

  const double scale = std::max({std::fabs(L.A), std::fabs(L.B), std::fabs(L.C), 1.0});
  tr.quartic_residual =
      std::max(std::abs((q1 * q1 - L.A) * (q1 * q1 - L.B) - L.C),
               std::abs((q2 * q2 - L.A) * (q2 * q2 - L.B) - L.C)) / scale;

  // Mode amplitudes referenced to the dominant field component, which keeps
  // the boundary system well conditioned however weak the coupling is. The
  // quartic turns (q^2 - A)/C1 into the stable form C2/(q^2 - B) for the
  // TM-like root and vice versa.
  // mode 1 (q1^2 -> A as the coupling vanishes): u = e_x (1, alpha, beta, gamma)
  tr.alpha1 = L.C2 / (q1 * q1 - L.B);
  tr.beta1 = -(L.L31 + L.L32 * tr.alpha1) / q1;
  tr.gamma1 = -(L.L41 + L.L42 * tr.alpha1) / q1;
  // mode 2 (q2^2 -> B): u = e_y (alpha, 1, beta, gamma), alpha = e_x/e_y
  tr.alpha2 = L.C1 / (q2 * q2 - L.A);
  tr.beta2 = -(L.L31 * tr.alpha2 + L.L32) / q2;
  tr.gamma2 = -(L.L41 * tr.alpha2 + L.L42) / q2;

  cd M[4][4] = {{-1.0, 0.0, tr.alpha1, 1.0},
                {q_in, 0.0, -tr.beta1, -tr.beta2},
                {0.0, q_in, 1.0, tr.alpha2},
                {0.0, -1.0, tr.gamma1, tr.gamma2}};
  cd bte[4] = {1.0, q_in, 0.0, 0.0};
  cd btm[4] = {0.0, 0.0, q_in, 1.0};
  solve4_two(M, bte, btm);
  for (int i = 0; i < 4; ++i) {
    tr.sol_te[i] = bte[i];
    tr.sol_tm[i] = btm[i];
  }

  ReflectionMatrix r;
  r.te_te = bte[0].real();
  r.te_tm = bte[1].real();
  r.tm_te = btm[0].real();
  r.tm_tm = btm[1].real();
  tr.max_imag = std::max({std::fabs(bte[0].imag()), std::fabs(bte[1].imag()),
                          std::fabs(btm[0].imag()), std::fabs(btm[1].imag())});
  if (trace) *trace = tr;
  if (tr.max_imag > 1e-10 * std::max({1.0, std::fabs(r.te_te), std::fabs(r.tm_tm)}))
    throw SolverError("biaxial solve: reflection entries not real on the imaginary axis");
  return r;
}

ReflectionMatrix biaxial_perturbative_reflection(const DiagonalTensorResponse& base,
                                                 double delta, const TransverseWave& w) {
  if (base.eps_xx != base.eps_yy || base.mu_xx != base.mu_yy)
    throw std::domain_error("perturbative reflection: baseline must be in-plane isotropic");
  if (base.mu_zz != 1.0)
    throw std::domain_error("perturbative reflection: requires mu_zz = 1");
  const double e = base.eps_xx, ez = base.eps_zz, m = base.mu_xx;
  const double s = std::sin(w.phi), c = std::cos(w.phi);
  const double kc2 = sq(w.k_par * kLightSpeed / w.xi);
  const double q_in = kLightSpeed * w.K3() / w.xi;
  const double q_te = std::sqrt(m * (e + kc2));            // scaled TE axial root
  const double q_tm = std::sqrt(e * (m + kc2 / ez));       // scaled TM axial root

  const double r_te0 = (m * q_in - q_te) / (m * q_in + q_te);
  const double r_tm0 = (e * q_in - q_tm) / (e * q_in + q_tm);
  const double r21_te = -0.5 * e * m * c * c * (1.0 + r_te0) / (q_te * (q_te + m * q_in));
  const double r21_tm = 0.5 * q_in * e * s * s * (1.0 - r_tm0) / (q_tm + e * q_in);
  // first-order cross coupling, antisymmetric in this basis
  const double off = -delta * e * m * q_tm * q_in * (2.0 * s * c) /
                     ((q_tm + q_te) * (q_tm + e * q_in) * (q_te + m * q_in));

  ReflectionMatrix r;
  r.te_te = r_te0 + delta * r21_te;
  r.tm_tm = r_tm0 + delta * r21_tm;
  r.te_tm = off;
  r.tm_te = -off;
  return r;
}

double slab_reflection(double r_halfspace, double K_medium, double thickness) {
  if (!(thickness > 0.0)) throw std::domain_error("slab_reflection: thickness must be > 0");
  if (K_medium < 0.0) throw std::domain_error("slab_reflection: negative decay constant");
  const double e = std::exp(-2.0 * K_medium * thickness);
  return r_halfspace * (1.0 - e) / (1.0 - r_halfspace * r_halfspace * e);
}

ReflectionMatrix zero_mode_reflection(const ZeroModeLimits& zm, double k) {
  if (!(k > 0.0)) throw std::domain_error("zero_mode_reflection: k must be > 0");
  ReflectionMatrix r;
  if (std::isinf(zm.mu0)) {
    r.te_te = 1.0;
  } else {
    const double s = std::sqrt(zm.mu_ratio * k * k + zm.mu0 * zm.we);
    r.te_te = (zm.mu0 * k - s) / (zm.mu0 * k + s);
  }
  if (std::isinf(zm.eps0)) {
    r.tm_tm = 1.0;
  } else {
    const double s = std::sqrt(zm.eps_ratio * k * k + zm.eps0 * zm.wm);
    r.tm_tm = (zm.eps0 * k - s) / (zm.eps0 * k + s);
  }
  return r;
}

double min_halfspace_thickness(const DrudeParams& metal, ThicknessRegime regime, double xi) {
  if (!(metal.plasma_freq > 0.0)) throw std::domain_error("min_halfspace_thickness: needs a metal");
  const double high = kLightSpeed / metal.plasma_freq; // lambda_p / 2 pi
  if (regime == ThicknessRegime::kHighFrequency) return high;
  if (!(xi > 0.0)) throw std::domain_error("min_halfspace_thickness: low-frequency bound needs xi > 0");
  return std::max(high, high * std::sqrt(metal.dissipation / xi));
}

// ---------------------------------------------------------------------------

ReflectionMatrix layer_reflection(const Layer& layer, const TransverseWave& w) {
  const DiagonalTensorResponse t = layer.material->eval(ImaginaryFrequency(w.xi));
  if (!t.in_plane_isotropic()) {
    if (!layer.is_halfspace())
      throw std::domain_error("finite-thickness biaxial layers are unsupported");
    return biaxial_exact_reflection(t, w);
  }
  ReflectionMatrix r = uniaxial_reflection(t, w);
  if (!layer.is_halfspace()) {
    const double k2 = sq(w.k_par), x2 = sq(w.xi / kLightSpeed);
    const double K_te = std::sqrt((t.mu_xx / t.mu_zz) * k2 + t.mu_xx * t.eps_xx * x2);
    const double K_tm = std::sqrt((t.eps_xx / t.eps_zz) * k2 + t.eps_xx * t.mu_xx * x2);
    r.te_te = slab_reflection(r.te_te, K_te, *layer.thickness);
    r.tm_tm = slab_reflection(r.tm_tm, K_tm, *layer.thickness);
  }
  return r;
}

ReflectionMatrix layer_zero_mode(const Layer& layer, double k) {
  const ZeroModeLimits zm = layer.material->zero_mode_limits();
  ReflectionMatrix r = zero_mode_reflection(zm, k);
  if (!layer.is_halfspace()) {
    if (std::isinf(zm.eps0) && std::isinf(zm.mu0))
      throw UnsupportedZeroMode("slab with both responses divergent at xi = 0");
    // in-medium decay constants at xi = 0; the mu eps xi^2/c^2 pieces survive
    // only through the plasma constants
    const double K_te = std::isinf(zm.mu0) ? std::sqrt(zm.mu_ratio * k * k + zm.eps0 * zm.wm)
                                           : std::sqrt(zm.mu_ratio * k * k + zm.mu0 * zm.we);
    const double K_tm = std::isinf(zm.eps0) ? std::sqrt(zm.eps_ratio * k * k + zm.mu0 * zm.we)
                                            : std::sqrt(zm.eps_ratio * k * k + zm.eps0 * zm.wm);
    r.te_te = slab_reflection(r.te_te, K_te, *layer.thickness);
    r.tm_tm = slab_reflection(r.tm_tm, K_tm, *layer.thickness);
  }
  return r;
}

} // namespace casimir
