#pragma once

#include <complex>

#include "casimir/materials.hpp"

namespace casimir {

using cplx = std::complex<double>;

// Riccati-Bessel pieces of order 1, trigonometric closed forms with a series
// switch for small |z| where the closed forms cancel catastrophically.
cplx sph_j1(cplx z);
cplx riccati_psi1_prime(cplx z);  // [z j1(z)]'
cplx sph_h1(cplx z);              // outgoing Hankel, j1 + i y1
cplx riccati_xi1_prime(cplx z);   // [z h1(z)]'

struct MieDipoleCoeffs {
  cplx a1; // electric dipole
  cplx b1; // magnetic dipole
};

// Order-1 scattering coefficients of a sphere with permittivity eps_in in a
// host eps_h, at size parameter x = omega R / c. Sign convention matches the
// small-x limit a1 -> (2i/3) x^3 (eps_in - eps_h)/(eps_in + 2 eps_h).
MieDipoleCoeffs mie_dipole_coeffs(double x, cplx eps_in, cplx eps_h);

struct EmgResponse {
  cplx eps;
  cplx mu;
  bool beyond_validity = false; // x > 0.3
  bool near_pole = false;       // effective-medium denominator nearly vanished
};

// Extended Maxwell Garnett effective response of a sphere array at a real
// frequency omega.
EmgResponse emg_effective_response(double omega, double filling, double radius,
                                   cplx eps_in, cplx eps_h);

} // namespace casimir
