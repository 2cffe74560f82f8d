#include "casimir/kramers_kronig.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/mie.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

// panel edges concentrating nodes around each listed feature
std::vector<double> feature_edges(const ImPartSampler& s, double hi) {
  std::vector<double> e;
  e.push_back(0.0);
  const double w = s.feature_width;
  for (double f : s.features) {
    if (f <= 0.0 || f >= hi) continue;
    for (double m : {-30.0, -5.0, 5.0, 30.0}) {
      const double x = f + m * w;
      if (x > 0.0 && x < hi) e.push_back(x);
    }
    e.push_back(f);
  }
  // a few decades below the first feature so the small-y region is resolved
  const double lo = s.features.empty() ? hi * 1e-4 : *std::min_element(s.features.begin(), s.features.end());
  for (double m : {1e-3, 1e-2, 0.1, 0.5}) {
    const double x = lo * m;
    if (x > 0.0 && x < hi) e.push_back(x);
  }
  e.push_back(hi);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

} // namespace

KkResult kk_to_imaginary_axis(const ImPartSampler& s, double xi, double rel_tol) {
  if (xi < 0.0 || !std::isfinite(xi)) throw std::domain_error("kk: xi must be finite and >= 0");

  // locate the truncation frequency
  double hi = s.omega_max;
  double peak = 0.0;
  for (double f : s.features) peak = std::max(peak, std::fabs(s.im(f)));
  if (hi <= 0.0) {
    double start = 1.0;
    for (double f : s.features) start = std::max(start, 4.0 * f);
    start = std::max(start, 4.0 * xi);
    if (peak == 0.0) peak = std::max(std::fabs(s.im(start)), 1e-300);
    hi = start;
    int doublings = 0;
    while (std::fabs(s.im(hi)) > 1e-12 * peak && doublings < 200) {
      hi *= 2.0;
      ++doublings;
    }
    if (doublings >= 200)
      throw QuadratureError("kk: tail truncation did not converge");
  }

  auto integrand = [&](std::span<const double> y, std::span<double> out) {
    for (size_t i = 0; i < y.size(); ++i)
      out[i] = y[i] * s.im(y[i]) / (xi * xi + y[i] * y[i]);
  };
  QuadResult main = integrate_panels(integrand, feature_edges(s, hi), rel_tol, 0.0, 4'000'000);

  // remaining tail via y = xi tan(theta) when no hard cutoff was given;
  // the integrand there is (y/xi) Im f(y), already below 1e-12 of peak
  double tail = 0.0, tail_err = 0.0;
  if (s.omega_max <= 0.0 && xi > 0.0) {
    const double th0 = std::atan(hi / xi);
    auto tail_fn = [&](std::span<const double> th, std::span<double> out) {
      for (size_t i = 0; i < th.size(); ++i) {
        const double y = xi * std::tan(th[i]);
        out[i] = (y / xi) * s.im(y);
      }
    };
    QuadResult t = integrate_panels(tail_fn, {th0, 0.5 * (th0 + kPi / 2.0), kPi / 2.0},
                                    1e-3, 1e-12 * std::fabs(main.value) + 1e-300, 100'000);
    // g dy = (y/xi) Im f dtheta, so the theta integral is already the tail
    tail = t.value;
    tail_err = t.error;
  }

  if (!main.converged)
    throw QuadratureError("kk: quadrature tolerance not met");

  KkResult r;
  r.value = 1.0 + (2.0 / kPi) * (main.value + tail);
  r.error = (2.0 / kPi) * (main.error + tail_err);
  r.truncation = hi;
  return r;
}

// ---------------------------------------------------------------------------

SphereCompositeMaterial::SphereCompositeMaterial(double filling, double radius,
                                                 PolaritonicParams inclusion, double host_eps)
    : filling_(filling), radius_(radius), inclusion_(inclusion), host_eps_(host_eps) {
  if (filling < 0.0 || filling > 1.0) throw std::domain_error("spheres_kk: filling outside [0,1]");
  if (!(radius > 0.0)) throw std::domain_error("spheres_kk: radius must be > 0");
  omega_cut_ = 0.3 * kLightSpeed / radius_;
  eps0_ = eps_direct(0.0).value;
  mu0_ = mu_direct(0.0).value;
}

ImPartSampler SphereCompositeMaterial::eps_sampler() const {
  ImPartSampler s;
  const PolaritonicParams p = inclusion_;
  const double f = filling_, R = radius_, eh = host_eps_;
  s.im = [p, f, R, eh](double w) {
    return emg_effective_response(w, f, R, polaritonic_eps_real_axis(p, w), eh).eps.imag();
  };
  // effective-medium dipole resonance: eps_pol(w) = -(2+f)/(1-f) eh
  const double S = (2.0 + f) / (1.0 - f) * eh;
  const double num = p.eps_inf * p.Omega_pol * p.Omega_pol + S * p.omega_pol * p.omega_pol;
  s.features = {p.omega_pol, std::sqrt(num / (S + p.eps_inf))};
  s.feature_width = std::max(p.gamma_pol, 1e-6 * p.omega_pol);
  s.omega_max = omega_cut_;
  return s;
}

ImPartSampler SphereCompositeMaterial::mu_sampler() const {
  ImPartSampler s = eps_sampler();
  const PolaritonicParams p = inclusion_;
  const double f = filling_, R = radius_, eh = host_eps_;
  s.im = [p, f, R, eh](double w) {
    return emg_effective_response(w, f, R, polaritonic_eps_real_axis(p, w), eh).mu.imag();
  };
  return s;
}

KkResult SphereCompositeMaterial::eps_direct(double xi) const {
  return kk_to_imaginary_axis(eps_sampler(), xi);
}

KkResult SphereCompositeMaterial::mu_direct(double xi) const {
  return kk_to_imaginary_axis(mu_sampler(), xi);
}

DiagonalTensorResponse SphereCompositeMaterial::eval(ImaginaryFrequency f) const {
  DiagonalTensorResponse t;
  const double e = eps_direct(f.xi).value;
  const double m = mu_direct(f.xi).value;
  t.eps_xx = t.eps_yy = t.eps_zz = e;
  t.mu_xx = t.mu_yy = t.mu_zz = m;
  return t;
}

ZeroModeLimits SphereCompositeMaterial::zero_mode_limits() const {
  ZeroModeLimits z;
  z.eps0 = eps0_;
  z.mu0 = mu0_;
  return z;
}

} // namespace casimir
