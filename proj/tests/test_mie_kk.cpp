#include <doctest.h>

#include <cmath>
#include <complex>

#include "casimir/kramers_kronig.hpp"
#include "casimir/mie.hpp"

using namespace casimir;

namespace {
constexpr double kOm = 1.37e16;
using cd = std::complex<double>;

// Independent textbook oracle for the order-1 Mie coefficients: the
// Riccati-Bessel formulation in terms of the relative refractive index m,
// host eps_h = 1. Convention note: this yields the opposite sign of the
// convention used by mie_dipole_coeffs (whose small-x limit is
// +(2i/3) x^3 (eps-1)/(eps+2)).
void mie_oracle(double x, cd eps, cd& a1, cd& b1) {
  const cd m = std::sqrt(eps);
  const cd mx = m * x;
  auto psi = [](cd z) { return std::sin(z) / z - std::cos(z); };
  auto psi_p = [](cd z) { return std::cos(z) / z - std::sin(z) / (z * z) + std::sin(z); };
  const cd i(0.0, 1.0);
  auto xi_f = [&](cd z) { return -std::exp(i * z) * (i + z) / z; };
  auto xi_p = [&](cd z) { return -std::exp(i * z) * (i * z * z - z - i) / (z * z); };
  a1 = (m * psi(mx) * psi_p(x) - psi(x) * psi_p(mx)) /
       (m * psi(mx) * xi_p(x) - xi_f(x) * psi_p(mx));
  b1 = (psi(mx) * psi_p(x) - m * psi(x) * psi_p(mx)) /
       (psi(mx) * xi_p(x) - m * xi_f(x) * psi_p(mx));
}
} // namespace

TEST_CASE("spherical Bessel closed forms match series at the switch point") {
  // closed trig forms just above the switch against the series just below
  for (double z : {0.0099, 0.0101}) {
    const cd j1 = sph_j1(cd(z));
    const cd j1_ref = cd(z / 3.0 * (1 - z * z / 10.0 * (1 - z * z / 28.0)));
    CHECK(std::abs(j1 - j1_ref) < 1e-14);
  }
  // Wronskian identity psi1' xi1 - psi1 xi1' = -i pins all four pieces
  const cd z(0.7, 0.3);
  const cd psi1 = z * sph_j1(z);
  const cd xi1 = z * sph_h1(z);
  const cd w = riccati_psi1_prime(z) * xi1 - psi1 * riccati_xi1_prime(z);
  CHECK(std::abs(w - cd(0.0, -1.0)) < 1e-12);
}

TEST_CASE("mie coefficients: no scatterer, textbook point, small-x law") {
  // eps_in == eps_h: nothing scatters. The vacuum-size-parameter convention
  // (the one whose effective-medium limit is Maxwell Garnett) makes this
  // exact for a vacuum host and quasistatic otherwise.
  auto c0 = mie_dipole_coeffs(0.5, cd(1.0, 0.0), cd(1.0, 0.0));
  CHECK(std::abs(c0.a1) < 1e-15);
  CHECK(std::abs(c0.b1) < 1e-15);
  auto ch = mie_dipole_coeffs(1e-3, cd(3.0, 0.0), cd(3.0, 0.0));
  CHECK(std::abs(ch.a1) < 1e-11);
  CHECK(std::abs(ch.b1) < 1e-11);

  // x = 0.5, eps = 4 against the independent oracle (sign convention flips)
  cd a_bh, b_bh;
  mie_oracle(0.5, cd(4.0, 0.0), a_bh, b_bh);
  auto c = mie_dipole_coeffs(0.5, cd(4.0, 0.0), cd(1.0, 0.0));
  CHECK(std::abs(c.a1 + a_bh) < 1e-12 * std::abs(a_bh));
  CHECK(std::abs(c.b1 + b_bh) < 1e-12 * std::abs(b_bh));

  // quasistatic dipole limit, including a non-vacuum host
  for (double eh : {1.0, 2.25}) {
    const double x = 1e-3;
    auto cs = mie_dipole_coeffs(x, cd(5.0, 0.0), cd(eh, 0.0));
    const cd lead = cd(0.0, 2.0 / 3.0) * (x * x * x) * (5.0 - eh) / (5.0 + 2.0 * eh);
    CHECK(std::abs(cs.a1 - lead) < 1e-5 * std::abs(lead));
  }
}

TEST_CASE("mie small-x error scales as x^5") {
  // |a1 - leading| should drop ~32x when x halves
  auto err = [](double x) {
    auto c = mie_dipole_coeffs(x, cd(4.0, 0.0), cd(1.0, 0.0));
    const cd lead = cd(0.0, 2.0 / 3.0) * (x * x * x) * 3.0 / 6.0;
    return std::abs(c.a1 - lead);
  };
  const double r1 = err(0.2) / err(0.1);
  CHECK(std::log2(r1) == doctest::Approx(5.0).epsilon(0.08));
}

TEST_CASE("extended Maxwell Garnett trivial limits") {
  PolaritonicParams p{2.0, 0.4 * kOm, 0.15 * kOm, 0.001 * kOm};
  const double w = 0.2 * kOm;
  const cd ein = polaritonic_eps_real_axis(p, w);
  auto r0 = emg_effective_response(w, 0.0, 5e-9, ein, cd(1.7, 0.0));
  CHECK(r0.eps == cd(1.7, 0.0));
  CHECK(r0.mu == cd(1.0, 0.0));
  // validity flag
  auto rv = emg_effective_response(0.5 * kOm, 0.1, 5e-9, ein, cd(1.0, 0.0));
  CHECK(!rv.beyond_validity);
  auto rb = emg_effective_response(2.0 * kOm, 0.1, 5e-9, ein, cd(1.0, 0.0));
  CHECK(rb.beyond_validity);
}

TEST_CASE("emg resonance sits at the dilute-limit dipole frequency") {
  // dilute array: the effective response resonates where eps_pol = -(2+f)/(1-f),
  // near 0.3 Om for the TlCl-like set
  PolaritonicParams p{2.0, 0.4 * kOm, 0.15 * kOm, 0.001 * kOm};
  const double f = 0.05, R = 5e-9;
  double best_w = 0.0, best = 0.0;
  for (double w = 0.2 * kOm; w < 0.4 * kOm; w += 1e-4 * kOm) {
    const double im = emg_effective_response(w, f, R, polaritonic_eps_real_axis(p, w), 1.0).eps.imag();
    if (im > best) {
      best = im;
      best_w = w;
    }
  }
  CHECK(std::fabs(best_w / kOm - 0.3) < 0.03); // within 10% of 0.3 Om
  // and mu shows no such resonance there
  const double imu =
      emg_effective_response(best_w, f, R, polaritonic_eps_real_axis(p, best_w), 1.0).mu.imag();
  CHECK(imu < 0.01 * best);
}

TEST_CASE("kk transform: zero absorption gives exactly 1") {
  ImPartSampler s;
  s.im = [](double) { return 0.0; };
  s.features = {1e15};
  s.feature_width = 1e13;
  s.omega_max = 1e17;
  CHECK(kk_to_imaginary_axis(s, 1e15).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kk round trip against closed forms, 1e-6 relative") {
  // Lorentz oscillator
  const LorentzResonanceParams lor{0.3 * kOm, 0.2 * kOm, 0.01 * kOm};
  ImPartSampler s;
  s.im = [&](double w) {
    const double d1 = lor.resonance * lor.resonance - w * w;
    const double d2 = lor.dissipation * w;
    return lor.strength * lor.strength * d2 / (d1 * d1 + d2 * d2);
  };
  s.features = {lor.resonance};
  s.feature_width = lor.dissipation;
  for (double xi : {0.0, 0.03 * kOm, 0.2 * kOm, 2.0 * kOm}) {
    const auto r = kk_to_imaginary_axis(s, xi, 1e-9);
    const double exact = 1.0 + lorentz_term(lor, xi);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-6));
    CHECK(r.truncation > 0.0);
  }

  // Drude conductor
  const DrudeParams dr{0.96 * kOm, 0.004 * kOm};
  ImPartSampler sd;
  sd.im = [&](double w) {
    return dr.plasma_freq * dr.plasma_freq * dr.dissipation / (w * (w * w + dr.dissipation * dr.dissipation));
  };
  sd.features = {dr.dissipation};
  sd.feature_width = dr.dissipation;
  for (double xi : {0.001 * kOm, 0.1 * kOm, 1.3 * kOm}) {
    const auto r = kk_to_imaginary_axis(sd, xi, 1e-9);
    CHECK(r.value == doctest::Approx(drude_eps(dr, xi)).epsilon(1e-6));
  }
}

TEST_CASE("spheres_kk material reproduces the TlCl-like curves") {
  PolaritonicParams p{2.0, 0.4 * kOm, 0.15 * kOm, 0.001 * kOm};
  SphereCompositeMaterial mm(0.4, 5e-9, p);
  CHECK(mm.validity_cutoff() == doctest::Approx(0.3 * kLightSpeed / 5e-9));

  const auto low = mm.eval(ImaginaryFrequency(0.005 * kOm));
  const auto mid = mm.eval(ImaginaryFrequency(0.1 * kOm));
  CHECK(low.eps_xx > 2.0);               // strongly dielectric at low xi
  CHECK(std::fabs(mid.mu_xx - 1.0) < 0.05);
  CHECK(mid.eps_xx > 20.0 * (mid.mu_xx - 1.0)); // eps dominates mu everywhere

  // passivity of both KK outputs across the grid
  for (double x : {0.01, 0.05, 0.3, 1.0}) {
    const auto t = mm.eval(ImaginaryFrequency(x * kOm));
    CHECK(t.eps_xx >= 1.0);
    CHECK(t.mu_xx >= 1.0);
  }
  // static limits feed the zero mode
  const auto zm = mm.zero_mode_limits();
  CHECK(zm.eps0 > 2.0);
  CHECK(zm.mu0 == doctest::Approx(1.0).epsilon(0.01));
}
