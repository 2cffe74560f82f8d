#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "casimir/types.hpp"

namespace casimir {

// ---------------------------------------------------------------------------
// Parameter sets
// ---------------------------------------------------------------------------

struct DrudeParams {
  double plasma_freq = 0.0; // Omega [rad/s]
  double dissipation = 0.0; // gamma [rad/s]; 0 selects the plasma model
};

struct LorentzResonanceParams {
  double strength = 0.0;    // Omega_r [rad/s]
  double resonance = 0.0;   // omega_r [rad/s]
  double dissipation = 0.0; // gamma_r [rad/s]
};

// One diagonal axis of a metallic-based composite: a resonance weighted by
// (1 - f) plus a Drude background weighted by f.
struct CompositeAxisParams {
  double filling = 0.0; // f in [0, 1]
  LorentzResonanceParams resonance;
  DrudeParams drude;
};

struct PolaritonicParams {
  double eps_inf = 1.0;
  double Omega_pol = 0.0; // rad/s, Omega_pol >= omega_pol
  double omega_pol = 0.0; // rad/s
  double gamma_pol = 0.0; // rad/s
};

struct AtomParams {
  double alpha0 = 0.0;  // static polarizability volume [m^3] (Gaussian alpha/4pi eps0)
  double omega0 = 0.0;  // dominant transition [rad/s]
  double mass = 0.0;    // kg
  double omega_z = 0.0; // trap frequency [rad/s]
};

// alpha0 is conventionally quoted in cm^3
inline double polarizability_cm3_to_m3(double alpha_cm3) { return alpha_cm3 * 1e-6; }

// ---------------------------------------------------------------------------
// Closed-form responses on the imaginary axis
// ---------------------------------------------------------------------------

// eps(i xi) = 1 + Omega^2 / (xi^2 + gamma xi)
double drude_eps(const DrudeParams& p, double xi);

// Omega_r^2 / (xi^2 + omega_r^2 + gamma_r xi); the full response is 1 + term
double lorentz_term(const LorentzResonanceParams& p, double xi);

// 1 + (1-f) lorentz + f drude
double composite_axis_eps(const CompositeAxisParams& p, double xi);

// Maxwell Garnett permittivity of metal spheres in a dielectric host; both
// constituent values already evaluated at the same i xi.
double mg_metal_spheres_eps(double filling, double eps_met, double eps_d);

// eps_pol(i xi) = eps_inf [1 + (Omega^2 - omega0^2)/(xi^2 + omega0^2 + gamma xi)]
double polaritonic_eps_imag_axis(const PolaritonicParams& p, double xi);
// Complex response on the real axis (passive: Im eps >= 0 for omega > 0).
std::complex<double> polaritonic_eps_real_axis(const PolaritonicParams& p, double omega);

// alpha0 / (1 + xi^2/omega0^2)
double atomic_polarizability(const AtomParams& p, double xi);

// ---------------------------------------------------------------------------
// Material interface
// ---------------------------------------------------------------------------

class Material {
 public:
  virtual ~Material() = default;

  virtual DiagonalTensorResponse eval(ImaginaryFrequency f) const = 0;

  // xi -> 0 limits for the zero Matsubara mode. Models whose limit has not
  // been classified must not silently participate in finite-T sums.
  virtual ZeroModeLimits zero_mode_limits() const {
    throw UnsupportedZeroMode("zero-frequency limit not classified for material '" + name() + "'");
  }

  virtual std::string name() const = 0;
  virtual bool is_isotropic() const { return true; }
  // true when eps_xx==eps_yy and mu_xx==mu_yy at every frequency, so the
  // reflection matrix is diagonal and phi-independent
  virtual bool in_plane_isotropic() const { return true; }
};

using MaterialPtr = std::shared_ptr<const Material>;

class Vacuum final : public Material {
 public:
  DiagonalTensorResponse eval(ImaginaryFrequency) const override { return {}; }
  ZeroModeLimits zero_mode_limits() const override { return {}; }
  std::string name() const override { return "vacuum"; }
};

class DrudeMetal final : public Material {
 public:
  explicit DrudeMetal(DrudeParams p) : p_(p) {}
  DiagonalTensorResponse eval(ImaginaryFrequency f) const override;
  ZeroModeLimits zero_mode_limits() const override;
  std::string name() const override { return p_.dissipation > 0 ? "drude" : "plasma"; }
  const DrudeParams& params() const { return p_; }

 private:
  DrudeParams p_;
};

// Isotropic metallic-based composite: eps from resonance + Drude background,
// mu from a magnetic resonance alone.
class IsotropicCompositeMM final : public Material {
 public:
  IsotropicCompositeMM(CompositeAxisParams eps, LorentzResonanceParams mu)
      : eps_(eps), mu_(mu) {}
  DiagonalTensorResponse eval(ImaginaryFrequency f) const override;
  ZeroModeLimits zero_mode_limits() const override;
  std::string name() const override { return "composite"; }
  const CompositeAxisParams& eps_params() const { return eps_; }
  const LorentzResonanceParams& mu_params() const { return mu_; }

 private:
  CompositeAxisParams eps_;
  LorentzResonanceParams mu_;
};

// General diagonal tensor model: one composite spec per eps axis, one Lorentz
// resonance per mu axis. Covers the uniaxial and biaxial configurations.
class TensorMM final : public Material {
 public:
  TensorMM(CompositeAxisParams ex, CompositeAxisParams ey, CompositeAxisParams ez,
           LorentzResonanceParams mx, LorentzResonanceParams my, LorentzResonanceParams mz)
      : ex_(ex), ey_(ey), ez_(ez), mx_(mx), my_(my), mz_(mz) {}
  DiagonalTensorResponse eval(ImaginaryFrequency f) const override;
  ZeroModeLimits zero_mode_limits() const override;
  std::string name() const override { return "tensor"; }
  bool is_isotropic() const override { return false; }
  bool in_plane_isotropic() const override;
  const CompositeAxisParams& eps_axis(int i) const { return i == 0 ? ex_ : (i == 1 ? ey_ : ez_); }
  const LorentzResonanceParams& mu_axis(int i) const { return i == 0 ? mx_ : (i == 1 ? my_ : mz_); }

 private:
  CompositeAxisParams ex_, ey_, ez_;
  LorentzResonanceParams mx_, my_, mz_;
};

// Multi-oscillator dielectric (BK7-style host): eps = 1 + sum of Lorentz terms
class OscillatorDielectric final : public Material {
 public:
  explicit OscillatorDielectric(std::vector<LorentzResonanceParams> osc) : osc_(std::move(osc)) {}
  double eps(double xi) const;
  DiagonalTensorResponse eval(ImaginaryFrequency f) const override;
  ZeroModeLimits zero_mode_limits() const override;
  std::string name() const override { return "oscillators"; }
  const std::vector<LorentzResonanceParams>& oscillators() const { return osc_; }

 private:
  std::vector<LorentzResonanceParams> osc_;
};

// Non-connected metallic MM: Maxwell Garnett background of metal spheres in a
// dielectric host, plus ad-hoc electric and magnetic resonances.
class NonConnectedMM final : public Material {
 public:
  NonConnectedMM(double filling, DrudeParams metal, std::vector<LorentzResonanceParams> host,
                 LorentzResonanceParams e_res, LorentzResonanceParams m_res)
      : filling_(filling), metal_(metal), host_(std::move(host)), e_res_(e_res), m_res_(m_res) {}
  DiagonalTensorResponse eval(ImaginaryFrequency f) const override;
  ZeroModeLimits zero_mode_limits() const override;
  std::string name() const override { return "nc"; }
  double filling() const { return filling_; }
  const DrudeParams& metal() const { return metal_; }
  const OscillatorDielectric host_material() const { return OscillatorDielectric(host_); }
  const LorentzResonanceParams& electric_resonance() const { return e_res_; }
  const LorentzResonanceParams& magnetic_resonance() const { return m_res_; }

 private:
  double filling_;
  DrudeParams metal_;
  std::vector<LorentzResonanceParams> host_;
  LorentzResonanceParams e_res_, m_res_;
};

} // namespace casimir
