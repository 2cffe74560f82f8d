#include <doctest.h>

#include <cmath>
#include <random>

#include "casimir/reflection.hpp"
#include "oracle_berreman.hpp"

using namespace casimir;

namespace {
constexpr double kOm = 1.37e16;

DiagonalTensorResponse tensor(double ex, double ey, double ez, double mx, double my, double mz) {
  DiagonalTensorResponse t;
  t.eps_xx = ex;
  t.eps_yy = ey;
  t.eps_zz = ez;
  t.mu_xx = mx;
  t.mu_yy = my;
  t.mu_zz = mz;
  return t;
}

double max_entry_diff(const ReflectionMatrix& a, const ReflectionMatrix& b) {
  return std::max({std::fabs(a.te_te - b.te_te), std::fabs(a.te_tm - b.te_tm),
                   std::fabs(a.tm_te - b.tm_te), std::fabs(a.tm_tm - b.tm_tm)});
}
} // namespace

TEST_CASE("metal Fresnel amplitudes") {
  TransverseWave w{0.0, 0.0, 2e15};
  CHECK(max_entry_diff(fresnel_metal(1.0, w), {}) == 0.0); // vacuum, no interface
  // normal incidence, eps = 4: r_TE = -1/3, r_TM = +1/3
  auto r = fresnel_metal(4.0, w);
  CHECK(r.te_te == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(r.tm_tm == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(r.te_tm == 0.0);
  CHECK(r.tm_te == 0.0);
  // perfect-conductor limit
  TransverseWave wk{3e6, 0.0, 2e15};
  auto rpc = fresnel_metal(1e14, wk);
  CHECK(rpc.te_te == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(rpc.tm_tm == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("isotropic magnetodielectric Fresnel amplitudes") {
  TransverseWave w{0.0, 0.0, 2e15};
  // impedance-matched at normal incidence
  auto rm = fresnel_isotropic_mm(3.7, 3.7, w);
  CHECK(rm.te_te == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rm.tm_tm == doctest::Approx(0.0).epsilon(1e-14));
  // mu = 4, eps = 1: r_TE = +1/3
  auto r = fresnel_isotropic_mm(1.0, 4.0, w);
  CHECK(r.te_te == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(r.tm_tm == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  // mu = 1 reduces to the metal form
  TransverseWave wk{4e6, 0.0, 1.3e15};
  CHECK(max_entry_diff(fresnel_isotropic_mm(7.3, 1.0, wk), fresnel_metal(7.3, wk)) < 1e-15);
}

TEST_CASE("uniaxial amplitudes") {
  TransverseWave wk{4e6, 0.0, 1.3e15};
  // isotropic tensor reduces to the isotropic formulas
  auto r = uniaxial_reflection(tensor(5.0, 5.0, 5.0, 2.0, 2.0, 2.0), wk);
  CHECK(max_entry_diff(r, fresnel_isotropic_mm(5.0, 2.0, wk)) < 1e-15);
  // normal incidence never sees the z-components
  TransverseWave w0{0.0, 0.0, 1.3e15};
  auto ra = uniaxial_reflection(tensor(2.0, 2.0, 8.0, 1.5, 1.5, 3.0), w0);
  auto rb = uniaxial_reflection(tensor(2.0, 2.0, 80.0, 1.5, 1.5, 30.0), w0);
  CHECK(max_entry_diff(ra, rb) < 1e-15);
  CHECK_THROWS_AS(uniaxial_reflection(tensor(2.0, 3.0, 8.0, 1.0, 1.0, 1.0), wk),
                  std::domain_error);
}

TEST_CASE("uniaxial against the independent axial-matrix oracle") {
  TransverseWave w{1.3e15 / kLightSpeed, 0.9, 1.3e15}; // k = xi/c
  auto t = tensor(2.0, 2.0, 8.0, 1.0, 1.0, 1.0);
  auto r = uniaxial_reflection(t, w);
  auto o = testing::berreman_reflection(t, w);
  CHECK(r.tm_tm == doctest::Approx(o.tm_tm).epsilon(1e-10));
  CHECK(r.te_te == doctest::Approx(o.te_te).epsilon(1e-10));

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double xi = std::pow(10.0, 13.0 + 3.5 * u(rng));
    TransverseWave wr{std::pow(10.0, -2.0 + 4.0 * u(rng)) * xi / kLightSpeed, u(rng) * kPi / 2,
                      xi};
    auto tr = tensor(1.0 + 20.0 * u(rng), 0, 1.0 + 20.0 * u(rng), 1.0 + 5.0 * u(rng), 0,
                     1.0 + 5.0 * u(rng));
    tr.eps_yy = tr.eps_xx;
    tr.mu_yy = tr.mu_xx;
    auto rr = uniaxial_reflection(tr, wr);
    auto oo = testing::berreman_reflection(tr, wr);
    CHECK(std::fabs(rr.te_te - oo.te_te) < 1e-9);
    CHECK(std::fabs(rr.tm_tm - oo.tm_tm) < 1e-9);
  }
}

TEST_CASE("biaxial exact solver: vacuum and reduction chain") {
  TransverseWave w{4e6, 0.7, 1.3e15};
  // vacuum tensor: zero matrix through the degenerate path
  BiaxialSolveTrace tr;
  auto rv = biaxial_exact_reflection(tensor(1, 1, 1, 1, 1, 1), w, &tr);
  CHECK(tr.used_fallback);
  CHECK(max_entry_diff(rv, {}) < 1e-14);

  // in-plane isotropic: off-diagonals vanish, diagonals match uniaxial
  auto t = tensor(2.0, 2.0, 8.0, 1.5, 1.5, 3.0);
  auto rb = biaxial_exact_reflection(t, w, &tr);
  CHECK(tr.used_fallback);
  auto ru = uniaxial_reflection(t, w);
  CHECK(max_entry_diff(rb, ru) < 1e-10);

  // a slightly asymmetric tensor follows the full Cramer path and converges
  // to the uniaxial limit linearly in the asymmetry
  auto mismatch = [&](double delta) {
    auto t1 = t;
    t1.eps_yy = t.eps_xx * (1.0 + delta);
    BiaxialSolveTrace tr1;
    auto r1 = biaxial_exact_reflection(t1, w, &tr1);
    CHECK(!tr1.used_fallback);
    return max_entry_diff(r1, ru);
  };
  CHECK(mismatch(1e-4) < 1e-3);
  CHECK(mismatch(1e-4) / mismatch(5e-5) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("biaxial exact solver: axis azimuths decouple polarizations") {
  auto t = tensor(3.0, 3.6, 2.0, 2.0, 2.0, 1.7);
  for (double phi : {0.0, kPi / 2.0}) {
    TransverseWave w{5e6, phi, 2e15};
    auto r = biaxial_exact_reflection(t, w);
    CHECK(std::fabs(r.te_tm) < 1e-14);
    CHECK(std::fabs(r.tm_te) < 1e-14);
  }
}

TEST_CASE("biaxial exact solver against the independent oracle") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const double xi = std::pow(10.0, 13.5 + 3.0 * u(rng));
    TransverseWave w{std::pow(10.0, -2.0 + 4.0 * u(rng)) * xi / kLightSpeed,
                     0.05 + 1.47 * u(rng), xi};
    auto t = tensor(1.0 + 30.0 * u(rng), 1.0 + 30.0 * u(rng), 1.0 + 30.0 * u(rng),
                    1.0 + 6.0 * u(rng), 1.0 + 6.0 * u(rng), 1.0 + 6.0 * u(rng));
    BiaxialSolveTrace tr;
    auto r = biaxial_exact_reflection(t, w, &tr);
    auto o = testing::berreman_reflection(t, w);
    CHECK(max_entry_diff(r, o) < 1e-8);
    // reality and passivity of the diagonals
    CHECK(tr.max_imag < 1e-10);
    CHECK(std::fabs(r.te_te) <= 1.0 + 1e-12);
    CHECK(std::fabs(r.tm_tm) <= 1.0 + 1e-12);
  }
}

TEST_CASE("biaxial trace: quartic residual, branch selection, eigen relations") {
  auto t = tensor(3.0, 3.6, 2.0, 2.0, 1.4, 1.7);
  TransverseWave w{6e6, 0.9, 2e15};
  BiaxialSolveTrace tr;
  (void)biaxial_exact_reflection(t, w, &tr);
  CHECK(!tr.used_fallback);
  CHECK(tr.quartic_residual < 1e-10);
  CHECK(tr.q1.real() > 0.0);
  CHECK(tr.q2.real() > 0.0);

  // boundary-condition residual: each transmitted mode satisfies
  // L u = -q u (mode 1 referenced to e_x', mode 2 to e_y')
  auto check_mode = [&](std::complex<double> q, const std::complex<double>* u) {
    const std::complex<double> Lu[4] = {
        tr.L13 * u[2] + tr.L14 * u[3], tr.L23 * u[2] + tr.L24 * u[3],
        tr.L31 * u[0] + tr.L32 * u[1], tr.L41 * u[0] + tr.L42 * u[1]};
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 4; ++i) {
      num += std::abs(Lu[i] + q * u[i]);
      den += std::abs(u[i]);
    }
    CHECK(num / den < 1e-9);
  };
  const std::complex<double> u1[4] = {1.0, tr.alpha1, tr.beta1, tr.gamma1};
  const std::complex<double> u2[4] = {tr.alpha2, 1.0, tr.beta2, tr.gamma2};
  check_mode(tr.q1, u1);
  check_mode(tr.q2, u2);

  // and the solved amplitudes satisfy the four tangential continuity rows
  auto check_solution = [&](const std::complex<double>* sol, double ete, double etm) {
    using cdl = std::complex<double>;
    const cdl E1 = sol[2], E2 = sol[3];
    const cdl rte = sol[0], rtm = sol[1];
    const double qin = tr.q_in_scaled;
    const cdl rows[4] = {
        -rte + tr.alpha1 * E1 + 1.0 * E2 - ete,
        qin * rte - tr.beta1 * E1 - tr.beta2 * E2 - qin * ete,
        qin * rtm + E1 + tr.alpha2 * E2 - qin * etm,
        -rtm + tr.gamma1 * E1 + tr.gamma2 * E2 - etm};
    for (const auto& rr : rows) CHECK(std::abs(rr) < 1e-9 * (1.0 + qin));
  };
  check_solution(tr.sol_te, 1.0, 0.0);
  check_solution(tr.sol_tm, 0.0, 1.0);
}

TEST_CASE("first-order perturbative reflection") {
  auto base = tensor(3.0, 3.0, 7.0, 2.0, 2.0, 1.0);
  TransverseWave w{6e6, 0.7, 2e15};

  // delta = 0 is the uniaxial matrix (same algebra, different grouping)
  auto r0 = biaxial_perturbative_reflection(base, 0.0, w);
  CHECK(max_entry_diff(r0, uniaxial_reflection(base, w)) < 1e-14);
  CHECK(r0.te_tm == 0.0);

  // off-diagonals: antisymmetric, proportional to sin 2phi
  const double d = 1e-3;
  auto r = biaxial_perturbative_reflection(base, d, w);
  CHECK(r.te_tm == doctest::Approx(-r.tm_te));
  auto r4 = biaxial_perturbative_reflection(base, d, {6e6, kPi / 4.0, 2e15});
  auto rs = biaxial_perturbative_reflection(base, d, {6e6, 0.3, 2e15});
  CHECK(rs.te_tm / r4.te_tm == doctest::Approx(std::sin(0.6)).epsilon(1e-12));
  auto rz = biaxial_perturbative_reflection(base, d, {6e6, 0.0, 2e15});
  CHECK(rz.te_tm == 0.0);
  CHECK(std::fabs(r4.te_tm) >= std::fabs(rs.te_tm));

  // halving delta shrinks the mismatch against the exact solver ~4x
  auto exact_at = [&](double delta) {
    auto t = base;
    t.eps_yy = base.eps_xx * (1.0 + delta);
    return biaxial_exact_reflection(t, w);
  };
  auto mismatch = [&](double delta) {
    return max_entry_diff(exact_at(delta), biaxial_perturbative_reflection(base, delta, w));
  };
  const double ratio = mismatch(2e-2) / mismatch(1e-2);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("slab correction") {
  CHECK(slab_reflection(0.63, 2e7, 1.0) == doctest::Approx(0.63)); // thick slab
  CHECK(slab_reflection(0.63, 2e7, 1e-12) == doctest::Approx(0.0).epsilon(1e-4));
  // r = 0.5, K d = 1
  const double e2 = std::exp(-2.0);
  CHECK(slab_reflection(0.5, 1.0, 1.0) ==
        doctest::Approx(0.5 * (1.0 - e2) / (1.0 - 0.25 * e2)).epsilon(1e-14));
  CHECK(slab_reflection(0.5, 1.0, 1.0) == doctest::Approx(0.447472).epsilon(1e-5));
  // |r_slab| grows monotonically with thickness
  double prev = 0.0;
  for (double dj = 1e-9; dj < 1e-5; dj *= 2.0) {
    const double v = std::fabs(slab_reflection(0.82, 3e6, dj));
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("zero-mode amplitudes per model class") {
  DrudeMetal drude({0.96 * kOm, 0.004 * kOm});
  DrudeMetal plasma({0.96 * kOm, 0.0});
  const double k = 3e6;

  auto rd = zero_mode_reflection(drude.zero_mode_limits(), k);
  CHECK(rd.te_te == 0.0);
  CHECK(rd.tm_tm == 1.0);

  auto rp = zero_mode_reflection(plasma.zero_mode_limits(), k);
  const double s = std::sqrt(k * k + 0.9216 * kOm * kOm / (kLightSpeed * kLightSpeed));
  CHECK(rp.te_te == doctest::Approx((k - s) / (k + s)).epsilon(1e-14));
  CHECK(rp.tm_tm == 1.0);
  // k -> 0: r_TE -> -1
  auto rp0 = zero_mode_reflection(plasma.zero_mode_limits(), 1e-3);
  CHECK(rp0.te_te == doctest::Approx(-1.0).epsilon(1e-9));

  // magnetic MM with mu(0) = 2: r_TE = 1/3
  ZeroModeLimits zmm;
  zmm.mu0 = 2.0;
  zmm.eps0 = 1.16;
  auto rm = zero_mode_reflection(zmm, k);
  CHECK(rm.te_te == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(rm.tm_tm == doctest::Approx(0.16 / 2.16).epsilon(1e-14));

  // unclassified material refuses
  class Odd final : public Material {
   public:
    DiagonalTensorResponse eval(ImaginaryFrequency) const override { return {}; }
    std::string name() const override { return "odd"; }
  };
  CHECK_THROWS_AS(Odd().zero_mode_limits(), UnsupportedZeroMode);
}

TEST_CASE("minimum half-space thickness") {
  DrudeParams gold{0.96 * kOm, 0.004 * kOm};
  const double high = min_halfspace_thickness(gold, ThicknessRegime::kHighFrequency);
  CHECK(high == doctest::Approx(kLightSpeed / (0.96 * kOm)));
  CHECK(high > 10e-9);
  CHECK(high < 25e-9);
  // skin-depth scale at xi = 1e13 rad/s: (c/Omega) sqrt(gamma/xi)
  const double low = min_halfspace_thickness(gold, ThicknessRegime::kLowFrequency, 1e13);
  CHECK(low == doctest::Approx(high * std::sqrt(0.004 * kOm / 1e13)).epsilon(1e-12));
  CHECK(low == doctest::Approx(5.34e-8).epsilon(0.01));
  // gamma -> 0 collapses to the high-frequency bound
  CHECK(min_halfspace_thickness({0.96 * kOm, 0.0}, ThicknessRegime::kLowFrequency, 1e13) ==
        doctest::Approx(high));
}

TEST_CASE("layer dispatch applies slab corrections consistently") {
  auto metal = std::make_shared<DrudeMetal>(DrudeParams{0.96 * kOm, 0.004 * kOm});
  TransverseWave w{5e6, 0.0, 2e15};
  Layer half{metal, std::nullopt};
  Layer thick{metal, 5e-7};
  Layer thin{metal, 2e-9};
  auto rh = layer_reflection(half, w);
  auto rt = layer_reflection(thick, w);
  auto rn = layer_reflection(thin, w);
  CHECK(std::fabs(rh.te_te - rt.te_te) < 1e-6);
  CHECK(std::fabs(rn.te_te) < std::fabs(rh.te_te));

  // zero-mode slab: a Drude slab still screens TM perfectly at xi = 0
  auto rz = layer_zero_mode(thick, 4e6);
  CHECK(rz.tm_tm == doctest::Approx(1.0));
  CHECK(rz.te_te == 0.0);
}

TEST_CASE("randomized passivity of diagonal reflection") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double xi = std::pow(10.0, 13.0 + 4.0 * u(rng));
    TransverseWave w{std::pow(10.0, -2.0 + 4.0 * u(rng)) * xi / kLightSpeed, 0.0, xi};
    auto t = tensor(1.0 + 50.0 * u(rng), 0, 1.0 + 50.0 * u(rng), 1.0 + 10.0 * u(rng), 0,
                    1.0 + 10.0 * u(rng));
    t.eps_yy = t.eps_xx;
    t.mu_yy = t.mu_xx;
    auto r = uniaxial_reflection(t, w);
    CHECK(std::fabs(r.te_te) <= 1.0);
    CHECK(std::fabs(r.tm_tm) <= 1.0);
  }
}

TEST_CASE("phi structure of the kernel inputs") {
  // in-plane isotropic media: amplitudes identical at every azimuth
  auto t = tensor(2.0, 2.0, 8.0, 1.5, 1.5, 3.0);
  TransverseWave w0{4e6, 0.0, 1.3e15};
  auto r0 = biaxial_exact_reflection(t, w0);
  for (double phi : {0.3, 0.7, 1.2, kPi / 2.0}) {
    auto r = biaxial_exact_reflection(t, {4e6, phi, 1.3e15});
    CHECK(std::fabs(r.te_te - r0.te_te) < 1e-12);
    CHECK(std::fabs(r.tm_tm - r0.tm_tm) < 1e-12);
    CHECK(std::fabs(r.te_tm) < 1e-12);
  }

  // orthorhombic media: the energy kernel invariants are even about both
  // tensor axes, so the quadrature may fold onto [0, pi/2] with weight 4
  auto tb = tensor(3.0, 3.6, 2.0, 2.0, 1.4, 1.7);
  for (double phi : {0.3, 1.1}) {
    auto rp = biaxial_exact_reflection(tb, {5e6, phi, 2e15});
    auto rm = biaxial_exact_reflection(tb, {5e6, -phi, 2e15});
    auto rr = biaxial_exact_reflection(tb, {5e6, kPi - phi, 2e15});
    // diagonals even, off-diagonals odd
    CHECK(rp.te_te == doctest::Approx(rm.te_te).epsilon(1e-12));
    CHECK(rp.tm_tm == doctest::Approx(rr.tm_tm).epsilon(1e-12));
    CHECK(rp.te_tm == doctest::Approx(-rm.te_tm).epsilon(1e-10));
    CHECK(rp.te_tm == doctest::Approx(-rr.te_tm).epsilon(1e-10));
    // trace/det invariants that enter the force are therefore even
    const double dp = rp.te_te * rp.tm_tm - rp.te_tm * rp.tm_te;
    const double dm = rm.te_te * rm.tm_tm - rm.te_tm * rm.tm_te;
    CHECK(dp == doctest::Approx(dm).epsilon(1e-12));
  }
}
