#pragma once

#include <complex>
#include <optional>

#include "casimir/materials.hpp"
#include "casimir/types.hpp"

namespace casimir {

// Vacuum / metal interface (mu = 1), standard Fresnel amplitudes.
ReflectionMatrix fresnel_metal(double eps1, const TransverseWave& w);

// Vacuum / isotropic magnetodielectric interface.
ReflectionMatrix fresnel_isotropic_mm(double eps2, double mu2, const TransverseWave& w);

// Vacuum / uniaxial medium with the optic axis along the surface normal
// (eps_xx == eps_yy, mu_xx == mu_yy). Diagonal and phi-independent.
ReflectionMatrix uniaxial_reflection(const DiagonalTensorResponse& t, const TransverseWave& w);

// Diagnostics of the orthorhombic solve. Everything is expressed in the
// scaled axial wavenumber Q = c q / omega, real-positive on the imaginary
// axis for decaying branches.
struct BiaxialSolveTrace {
  double L13 = 0, L14 = 0, L23 = 0, L24 = 0, L31 = 0, L32 = 0, L41 = 0, L42 = 0;
  double A = 0, B = 0, C1 = 0, C2 = 0, C = 0;
  std::complex<double> q1, q2;             // selected roots (scaled)
  // transmitted-mode field ratios. Mode 1 is referenced to e_x':
  // u1 = (1, alpha1, beta1, gamma1); mode 2 to e_y': u2 = (alpha2, 1, beta2, gamma2)
  std::complex<double> alpha1, beta1, gamma1;
  std::complex<double> alpha2, beta2, gamma2;
  // solved amplitudes (e_ref_TE, e_ref_TM, e_x'^(1), e_y'^(2)) per unit incidence
  std::complex<double> sol_te[4], sol_tm[4];
  double q_in_scaled = 0;                  // c K3 / xi
  double quartic_residual = 0;             // max residual of the two roots
  double max_imag = 0;                     // largest |Im| of a reflection entry
  bool used_fallback = false;              // decoupled TE/TM block formulas
};

// Exact reflection matrix of a vacuum / biaxial-orthorhombic interface via
// the quartic axial dispersion and Cramer solve. Falls back to the decoupled
// block formulas when the polarizations decouple (|C| ~ 0).
ReflectionMatrix biaxial_exact_reflection(const DiagonalTensorResponse& t,
                                          const TransverseWave& w,
                                          BiaxialSolveTrace* trace = nullptr);

// First order in delta for eps = diag(e, e(1+delta), ez), mu = diag(m, m, 1).
ReflectionMatrix biaxial_perturbative_reflection(const DiagonalTensorResponse& base,
                                                 double delta, const TransverseWave& w);

// Finite-thickness correction of one half-space amplitude. K_medium is the
// axial decay constant inside the layer for the polarization at hand.
double slab_reflection(double r_halfspace, double K_medium, double thickness);

// Interface amplitudes at xi = 0, k > 0 from the classified limits.
ReflectionMatrix zero_mode_reflection(const ZeroModeLimits& zm, double k);

enum class ThicknessRegime { kHighFrequency, kLowFrequency };

// Lower bound on a metal layer thickness for the half-space approximation:
// c/Omega at high frequency, the skin-depth scale (c/Omega) sqrt(gamma/xi)
// at low frequency (never below the high-frequency bound).
double min_halfspace_thickness(const DrudeParams& metal, ThicknessRegime regime, double xi = 0.0);

// ---------------------------------------------------------------------------
// Layers
// ---------------------------------------------------------------------------

struct Layer {
  MaterialPtr material;
  std::optional<double> thickness; // meters; empty = half-space

  bool is_halfspace() const { return !thickness.has_value(); }
};

// Full dispatch: evaluates the material, picks the appropriate interface
// solver, applies the slab correction for finite thickness (diagonal media
// only; biaxial slabs are unsupported).
ReflectionMatrix layer_reflection(const Layer& layer, const TransverseWave& w);

// xi = 0 amplitudes of a layer (slab correction included).
ReflectionMatrix layer_zero_mode(const Layer& layer, double k);

} // namespace casimir
