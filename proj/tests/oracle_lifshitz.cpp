#include "oracle_lifshitz.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"

namespace casimir::testing {

namespace {
void fresnel_pair(const DiagonalTensorResponse& t, double xi, double k, double& r_te,
                  double& r_tm) {
  const double K3 = std::sqrt(k * k + (xi / kLightSpeed) * (xi / kLightSpeed));
  const double K = std::sqrt(k * k + t.mu_xx * t.eps_xx * (xi / kLightSpeed) * (xi / kLightSpeed));
  r_te = (t.mu_xx * K3 - K) / (t.mu_xx * K3 + K);
  r_tm = (t.eps_xx * K3 - K) / (t.eps_xx * K3 + K);
}
} // namespace

double oracle_pressure_zero_T(const MaterialPtr& m1, const MaterialPtr& m2, double gap) {
  // F = (hbar c / 2 pi^2) (2d)^-4 Int du u^3 Int dtheta sin(theta) sum_p T_p,
  // u = 2 kappa d
  std::vector<double> un, uw, tn, tw;
  std::vector<double> u_all, w_all;
  const double edges[5] = {1e-4, 4.0, 12.0, 30.0, 60.0};
  for (int p = 0; p < 4; ++p) {
    gauss_legendre(48, edges[p], edges[p + 1], un, uw);
    u_all.insert(u_all.end(), un.begin(), un.end());
    w_all.insert(w_all.end(), uw.begin(), uw.end());
  }
  gauss_legendre(64, 0.0, kPi / 2.0, tn, tw);

  double total = 0.0;
  for (size_t i = 0; i < u_all.size(); ++i) {
    const double u = u_all[i];
    const double kap = u / (2.0 * gap);
    double ang = 0.0;
    for (size_t j = 0; j < tn.size(); ++j) {
      const double xi = kLightSpeed * kap * std::cos(tn[j]);
      const double k = kap * std::sin(tn[j]);
      const auto t1 = m1->eval(ImaginaryFrequency(xi));
      const auto t2 = m2->eval(ImaginaryFrequency(xi));
      if (!t1.isotropic() || !t2.isotropic())
        throw std::invalid_argument("oracle handles isotropic media only");
      double r1te, r1tm, r2te, r2tm;
      fresnel_pair(t1, xi, k, r1te, r1tm);
      fresnel_pair(t2, xi, k, r2te, r2tm);
      const double e = std::exp(-u);
      const double xte = r1te * r2te * e, xtm = r1tm * r2tm * e;
      ang += tw[j] * std::sin(tn[j]) * (xte / (1.0 - xte) + xtm / (1.0 - xtm));
    }
    total += w_all[i] * u * u * u * ang;
  }
  const double pref = kHbar * kLightSpeed / (2.0 * kPi * kPi * 16.0 * gap * gap * gap * gap);
  return pref * total;
}

double oracle_crossover(const std::function<double(double)>& pressure, double lo, double hi,
                        double rel_tol) {
  double flo = pressure(lo), fhi = pressure(hi);
  if (flo * fhi > 0.0) throw std::runtime_error("oracle_crossover: not bracketed");
  while ((hi - lo) > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double fm = pressure(mid);
    if (fm == 0.0) return mid;
    if (fm * flo < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double oracle_zero_mode_pressure(const MaterialPtr& m1, const MaterialPtr& m2, double gap,
                                 double temperature) {
  // P0 = (kB T / 2 pi) Int k^2 dk sum_p r1 r2 e^{-2kd} / (1 - r1 r2 e^{-2kd}),
  // Simpson on a fine linear grid in k with range 60/(2d)
  const ZeroModeLimits z1 = m1->zero_mode_limits();
  const ZeroModeLimits z2 = m2->zero_mode_limits();
  const int n = 20001;
  const double kmax = 60.0 / (2.0 * gap), h = kmax / (n - 1);
  auto f = [&](double k) {
    if (k <= 0.0) return 0.0;
    const ReflectionMatrix r1 = zero_mode_reflection(z1, k);
    const ReflectionMatrix r2 = zero_mode_reflection(z2, k);
    const double e = std::exp(-2.0 * k * gap);
    const double xte = r1.te_te * r2.te_te * e, xtm = r1.tm_tm * r2.tm_tm * e;
    return k * k * (xte / (1.0 - xte) + xtm / (1.0 - xtm));
  };
  double s = f(0.0) + f(kmax);
  for (int i = 1; i < n - 1; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return kBoltzmann * temperature / (2.0 * kPi) * s * h / 3.0;
}

} // namespace casimir::testing
