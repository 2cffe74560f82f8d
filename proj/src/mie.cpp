#include "casimir/mie.hpp"

#include <cmath>

namespace casimir {

namespace {
constexpr cplx kI(0.0, 1.0);
// below this the trig forms of j1 / psi1' lose digits to cancellation
constexpr double kSeriesSwitch = 1e-2;
} // namespace

cplx sph_j1(cplx z) {
  if (std::abs(z) < kSeriesSwitch) {
    const cplx z2 = z * z;
    return z / 3.0 * (1.0 - z2 / 10.0 * (1.0 - z2 / 28.0 * (1.0 - z2 / 54.0)));
  }
  return std::sin(z) / (z * z) - std::cos(z) / z;
}

cplx riccati_psi1_prime(cplx z) {
  if (std::abs(z) < kSeriesSwitch) {
    const cplx z2 = z * z;
    // d/dz [z^2/3 - z^4/30 + z^6/840 - z^8/45360]
    return 2.0 * z / 3.0 - 2.0 * z * z2 / 15.0 + z2 * z2 * z / 140.0 - z2 * z2 * z2 * z / 5670.0;
  }
  return std::cos(z) / z - std::sin(z) / (z * z) + std::sin(z);
}

cplx sph_h1(cplx z) { return -std::exp(kI * z) * (kI + z) / (z * z); }

cplx riccati_xi1_prime(cplx z) {
  return -std::exp(kI * z) * (kI * z * z - z - kI) / (z * z);
}

MieDipoleCoeffs mie_dipole_coeffs(double x, cplx eps_in, cplx eps_h) {
  if (!(x > 0.0)) throw std::domain_error("mie_dipole_coeffs: x must be > 0");
  const cplx xin = std::sqrt(eps_in) * x;
  const cplx j1x = sph_j1(cplx(x));
  const cplx psix = riccati_psi1_prime(cplx(x));
  const cplx h1x = sph_h1(cplx(x));
  const cplx xix = riccati_xi1_prime(cplx(x));
  const cplx j1p = sph_j1(xin);
  const cplx psip = riccati_psi1_prime(xin);
  MieDipoleCoeffs c;
  c.a1 = (j1p * psix * eps_in - j1x * psip * eps_h) / (h1x * psip * eps_h - j1p * xix * eps_in);
  c.b1 = (j1p * psix - j1x * psip) / (h1x * psip - j1p * xix);
  return c;
}

EmgResponse emg_effective_response(double omega, double filling, double radius,
                                   cplx eps_in, cplx eps_h) {
  const double x = omega * radius / kLightSpeed;
  EmgResponse r;
  r.beyond_validity = x > 0.3;
  if (filling == 0.0) {
    r.eps = eps_h;
    r.mu = 1.0;
    return r;
  }
  const MieDipoleCoeffs c = mie_dipole_coeffs(x, eps_in, eps_h);
  const double x3 = x * x * x;
  const cplx de = x3 + 1.5 * kI * filling * c.a1;
  const cplx dm = x3 + 1.5 * kI * filling * c.b1;
  const double tiny = 1e-10 * x3;
  r.near_pole = std::abs(de) < tiny || std::abs(dm) < tiny;
  if (std::abs(de) == 0.0 || std::abs(dm) == 0.0)
    throw std::domain_error("emg_effective_response: effective-medium pole");
  r.eps = eps_h * (x3 - 3.0 * kI * filling * c.a1) / de;
  r.mu = (x3 - 3.0 * kI * filling * c.b1) / dm;
  return r;
}

} // namespace casimir
