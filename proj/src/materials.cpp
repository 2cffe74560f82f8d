#include "casimir/materials.hpp"

#include <cmath>
#include <limits>

namespace casimir {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// xi -> 0 behavior of one response term: its static contribution above the
// baseline 1 (may be inf) and the plasma constant lim f xi^2 / c^2.
struct TermLimit {
  double term = 0.0;
  double w = 0.0;
};

TermLimit drude_term_limit(const DrudeParams& p, double weight) {
  TermLimit l;
  if (weight <= 0.0 || p.plasma_freq <= 0.0) return l;
  l.term = kInf;
  if (p.dissipation == 0.0) l.w = weight * p.plasma_freq * p.plasma_freq / (kLightSpeed * kLightSpeed);
  return l;
}

TermLimit lorentz_term_limit(const LorentzResonanceParams& p, double weight) {
  TermLimit l;
  if (weight <= 0.0 || p.strength <= 0.0) return l;
  if (p.resonance > 0.0) {
    l.term = weight * p.strength * p.strength / (p.resonance * p.resonance);
    return l;
  }
  l.term = kInf;
  if (p.dissipation == 0.0) l.w = weight * p.strength * p.strength / (kLightSpeed * kLightSpeed);
  return l;
}

// static value (1 + terms) of a composite eps axis
TermLimit composite_limit(const CompositeAxisParams& p) {
  TermLimit res = lorentz_term_limit(p.resonance, 1.0 - p.filling);
  TermLimit dru = drude_term_limit(p.drude, p.filling);
  TermLimit out;
  out.term = 1.0 + res.term + dru.term;
  out.w = res.w + dru.w;
  return out;
}

// static value of a mu axis (1 + resonant term)
TermLimit mu_limit(const LorentzResonanceParams& p) {
  TermLimit res = lorentz_term_limit(p, 1.0);
  TermLimit out;
  out.term = 1.0 + res.term;
  out.w = res.w;
  return out;
}

double finite_ratio(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 1.0; // same leading divergence assumed
  if (std::isinf(b)) return 0.0;
  if (std::isinf(a)) return kInf;
  return a / b;
}
} // namespace

double drude_eps(const DrudeParams& p, double xi) {
  if (xi < 0.0 || !std::isfinite(xi)) throw std::domain_error("drude_eps: xi must be finite and >= 0");
  if (xi == 0.0 && p.dissipation == 0.0 && p.plasma_freq > 0.0)
    throw std::domain_error("drude_eps: plasma model diverges at xi = 0");
  if (p.plasma_freq == 0.0) return 1.0;
  return 1.0 + p.plasma_freq * p.plasma_freq / (xi * xi + p.dissipation * xi);
}

double lorentz_term(const LorentzResonanceParams& p, double xi) {
  if (xi < 0.0 || !std::isfinite(xi)) throw std::domain_error("lorentz_term: xi must be finite and >= 0");
  if (p.strength == 0.0) return 0.0;
  const double denom = xi * xi + p.resonance * p.resonance + p.dissipation * xi;
  if (denom == 0.0) throw std::domain_error("lorentz_term: degenerate resonance at xi = 0");
  return p.strength * p.strength / denom;
}

double composite_axis_eps(const CompositeAxisParams& p, double xi) {
  if (p.filling < 0.0 || p.filling > 1.0)
    throw std::domain_error("composite_axis_eps: filling factor outside [0, 1]");
  double v = 1.0;
  if (p.filling < 1.0) v += (1.0 - p.filling) * lorentz_term(p.resonance, xi);
  if (p.filling > 0.0) v += p.filling * (drude_eps(p.drude, xi) - 1.0);
  return v;
}

double mg_metal_spheres_eps(double filling, double eps_met, double eps_d) {
  if (filling < 0.0 || filling > 1.0)
    throw std::domain_error("mg_metal_spheres_eps: filling factor outside [0, 1]");
  const double num = (1.0 + 2.0 * filling) * eps_met + 2.0 * (1.0 - filling) * eps_d;
  const double den = (1.0 - filling) * eps_met + (2.0 + filling) * eps_d;
  if (den == 0.0) throw std::domain_error("mg_metal_spheres_eps: vanishing denominator");
  if (std::isinf(eps_met)) // metal-sphere static limit
    return filling < 1.0 ? eps_d * (1.0 + 2.0 * filling) / (1.0 - filling) : kInf;
  return eps_d * num / den;
}

double polaritonic_eps_imag_axis(const PolaritonicParams& p, double xi) {
  if (xi < 0.0 || !std::isfinite(xi)) throw std::domain_error("polaritonic eps: bad xi");
  const double denom = xi * xi + p.omega_pol * p.omega_pol + p.gamma_pol * xi;
  if (denom == 0.0) throw std::domain_error("polaritonic eps: degenerate at xi = 0");
  return p.eps_inf * (1.0 + (p.Omega_pol * p.Omega_pol - p.omega_pol * p.omega_pol) / denom);
}

std::complex<double> polaritonic_eps_real_axis(const PolaritonicParams& p, double omega) {
  // passive damping convention: Im eps >= 0 for omega > 0
  const std::complex<double> denom(p.omega_pol * p.omega_pol - omega * omega, -p.gamma_pol * omega);
  return p.eps_inf * (1.0 + (p.Omega_pol * p.Omega_pol - p.omega_pol * p.omega_pol) / denom);
}

double atomic_polarizability(const AtomParams& p, double xi) {
  return p.alpha0 / (1.0 + (xi / p.omega0) * (xi / p.omega0));
}

// ---------------------------------------------------------------------------

DiagonalTensorResponse DrudeMetal::eval(ImaginaryFrequency f) const {
  const double e = drude_eps(p_, f.xi);
  DiagonalTensorResponse t;
  t.eps_xx = t.eps_yy = t.eps_zz = e;
  return t;
}

ZeroModeLimits DrudeMetal::zero_mode_limits() const {
  ZeroModeLimits z;
  TermLimit e = drude_term_limit(p_, 1.0);
  z.eps0 = 1.0 + e.term;
  z.we = e.w;
  return z;
}

DiagonalTensorResponse IsotropicCompositeMM::eval(ImaginaryFrequency f) const {
  DiagonalTensorResponse t;
  const double e = composite_axis_eps(eps_, f.xi);
  const double m = 1.0 + lorentz_term(mu_, f.xi);
  t.eps_xx = t.eps_yy = t.eps_zz = e;
  t.mu_xx = t.mu_yy = t.mu_zz = m;
  return t;
}

ZeroModeLimits IsotropicCompositeMM::zero_mode_limits() const {
  ZeroModeLimits z;
  TermLimit e = composite_limit(eps_);
  TermLimit m = mu_limit(mu_);
  z.eps0 = e.term;
  z.we = e.w;
  z.mu0 = m.term;
  z.wm = m.w;
  return z;
}

DiagonalTensorResponse TensorMM::eval(ImaginaryFrequency f) const {
  DiagonalTensorResponse t;
  t.eps_xx = composite_axis_eps(ex_, f.xi);
  t.eps_yy = composite_axis_eps(ey_, f.xi);
  t.eps_zz = composite_axis_eps(ez_, f.xi);
  t.mu_xx = 1.0 + lorentz_term(mx_, f.xi);
  t.mu_yy = 1.0 + lorentz_term(my_, f.xi);
  t.mu_zz = 1.0 + lorentz_term(mz_, f.xi);
  return t;
}

bool TensorMM::in_plane_isotropic() const {
  auto same_axis = [](const CompositeAxisParams& a, const CompositeAxisParams& b) {
    return a.filling == b.filling && a.resonance.strength == b.resonance.strength &&
           a.resonance.resonance == b.resonance.resonance &&
           a.resonance.dissipation == b.resonance.dissipation &&
           a.drude.plasma_freq == b.drude.plasma_freq && a.drude.dissipation == b.drude.dissipation;
  };
  auto same_mu = [](const LorentzResonanceParams& a, const LorentzResonanceParams& b) {
    return a.strength == b.strength && a.resonance == b.resonance && a.dissipation == b.dissipation;
  };
  return same_axis(ex_, ey_) && same_mu(mx_, my_);
}

ZeroModeLimits TensorMM::zero_mode_limits() const {
  if (!in_plane_isotropic())
    throw UnsupportedZeroMode("zero mode of an in-plane anisotropic tensor is not classified");
  TermLimit ex = composite_limit(ex_), ez = composite_limit(ez_);
  TermLimit mx = mu_limit(mx_), mz = mu_limit(mz_);
  ZeroModeLimits z;
  z.eps0 = ex.term;
  z.mu0 = mx.term;
  z.eps_ratio = finite_ratio(ex.term, ez.term);
  z.mu_ratio = finite_ratio(mx.term, mz.term);
  z.we = ex.w;
  z.wm = mx.w;
  return z;
}

double OscillatorDielectric::eps(double xi) const {
  double v = 1.0;
  for (const auto& o : osc_) v += lorentz_term(o, xi);
  return v;
}

DiagonalTensorResponse OscillatorDielectric::eval(ImaginaryFrequency f) const {
  DiagonalTensorResponse t;
  t.eps_xx = t.eps_yy = t.eps_zz = eps(f.xi);
  return t;
}

ZeroModeLimits OscillatorDielectric::zero_mode_limits() const {
  ZeroModeLimits z;
  double v = 1.0;
  for (const auto& o : osc_) {
    if (o.resonance <= 0.0) throw UnsupportedZeroMode("oscillator with zero resonance frequency");
    v += o.strength * o.strength / (o.resonance * o.resonance);
  }
  z.eps0 = v;
  return z;
}

DiagonalTensorResponse NonConnectedMM::eval(ImaginaryFrequency f) const {
  OscillatorDielectric host(host_);
  const double ed = host.eps(f.xi);
  const double em = f.xi > 0.0 ? drude_eps(metal_, f.xi) : kInf;
  DiagonalTensorResponse t;
  const double e = mg_metal_spheres_eps(filling_, em, ed) + lorentz_term(e_res_, f.xi);
  const double m = 1.0 + lorentz_term(m_res_, f.xi);
  t.eps_xx = t.eps_yy = t.eps_zz = e;
  t.mu_xx = t.mu_yy = t.mu_zz = m;
  return t;
}

ZeroModeLimits NonConnectedMM::zero_mode_limits() const {
  OscillatorDielectric host(host_);
  const double ed0 = host.zero_mode_limits().eps0;
  ZeroModeLimits z;
  z.eps0 = mg_metal_spheres_eps(filling_, kInf, ed0);
  if (e_res_.strength > 0.0) {
    if (e_res_.resonance <= 0.0) throw UnsupportedZeroMode("nc electric resonance at zero frequency");
    z.eps0 += e_res_.strength * e_res_.strength / (e_res_.resonance * e_res_.resonance);
  }
  TermLimit m = mu_limit(m_res_);
  z.mu0 = m.term;
  z.wm = m.w;
  return z;
}

} // namespace casimir
