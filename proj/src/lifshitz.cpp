#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "casimir/kernels.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

double sq(double x) { return x * x; }

std::vector<double> inner_edges(double y0) {
  return {y0, y0 + 1.0, y0 + 3.0, y0 + 7.0, y0 + 15.0, y0 + 30.0, y0 + 60.0};
}

// Reflection amplitudes computed from cancelling square roots carry O(eps)
// noise, so integrals whose true value is tiny can never converge relative
// to themselves. Every quadrature below therefore gets an absolute floor a
// few orders under the ideal-conductor magnitude of the same integral. The
// 4x4 boundary solve of the general path is noisier than the closed
// diagonal formulas and gets a correspondingly higher floor.
constexpr double kDiagNoise = 1e-12;
constexpr double kGeneralNoise = 1e-10;

double inner_floor(double y0, double noise) {
  return noise * (1.0 + y0 * y0) * std::exp(-y0);
}
double outer_floor(double gap) {
  // ideal-conductor value of the (xi, y) double integral is pi^4 c / (15 d)
  return 1e-12 * kPi * kPi * kPi * kPi * kLightSpeed / (15.0 * gap);
}
// xi-aggregated contribution of the inner floors, included in error reports
double inner_floor_aggregate(double gap, double noise) {
  return noise * 3.0 * kLightSpeed / (2.0 * gap);
}

LayerKernelParams layer_kernel_params(const Layer& layer, double xi) {
  const DiagonalTensorResponse t = layer.material->eval(ImaginaryFrequency(xi));
  if (!t.in_plane_isotropic())
    throw std::domain_error("diagonal kernel path requires in-plane isotropic layers");
  if (t.eps_xx < 1.0 - 1e-12 || t.eps_zz < 1.0 - 1e-12 || t.mu_xx < 1.0 - 1e-12 ||
      t.mu_zz < 1.0 - 1e-12)
    throw SolverError("layer response below 1 on the imaginary axis (non-passive model)");
  LayerKernelParams p;
  const double x2 = sq(xi / kLightSpeed);
  p.mu_x = t.mu_xx;
  p.eps_x = t.eps_xx;
  p.a_te = t.mu_xx / t.mu_zz;
  p.b_te = t.mu_xx * t.eps_xx * x2;
  p.a_tm = t.eps_xx / t.eps_zz;
  p.b_tm = t.eps_xx * t.mu_xx * x2;
  if (!layer.is_halfspace()) {
    p.slab = true;
    p.thickness = *layer.thickness;
  }
  return p;
}

struct InnerResult {
  double value = 0.0;
  double error = 0.0;
  long long evals = 0;
  bool converged = true;
};

// Int_{y0}^{y0+60} of the diagonal-pair kernel at one xi; y = 2 K3 d
InnerResult inner_diag(const Scenario& s, double xi, KernelMode mode, double rel_tol) {
  PairKernelParams p;
  p.l1 = layer_kernel_params(s.layer1, xi);
  p.l2 = layer_kernel_params(s.layer2, xi);
  p.inv_2d = 1.0 / (2.0 * s.gap);
  p.xi_over_c = xi / kLightSpeed;
  const PairKernelFn kernel = select_pair_kernel(p);

  std::vector<double> expy;
  BatchIntegrand f = [&](std::span<const double> y, std::span<double> out) {
    expy.resize(y.size());
    for (size_t i = 0; i < y.size(); ++i) expy[i] = std::exp(-y[i]);
    kernel(p, mode, y, expy, out);
  };
  const double y0 = 2.0 * xi * s.gap / kLightSpeed;
  QuadResult q =
      integrate_panels(f, inner_edges(y0), rel_tol, inner_floor(y0, kDiagNoise), s.quad.k_budget);
  if (!std::isfinite(q.value))
    throw SolverError("non-finite inner integrand (upstream model misuse)");
  return {q.value, q.error, q.evals, q.converged};
}

double kernel_node_general(const ReflectionMatrix& R1, const ReflectionMatrix& R2, double y,
                           KernelMode mode) {
  // X = R1m * R2m * e^{-y} in the (TE, TM) out/in basis
  const double e = std::exp(-y);
  const double a1 = R1.te_te, b1 = R1.tm_te, c1 = R1.te_tm, d1 = R1.tm_tm;
  const double a2 = R2.te_te, b2 = R2.tm_te, c2 = R2.te_tm, d2 = R2.tm_tm;
  const double x11 = (a1 * a2 + b1 * c2) * e;
  const double x12 = (a1 * b2 + b1 * d2) * e;
  const double x21 = (c1 * a2 + d1 * c2) * e;
  const double x22 = (c1 * b2 + d1 * d2) * e;
  const double tr = x11 + x22;
  const double det = x11 * x22 - x12 * x21;
  const double den = 1.0 - tr + det; // det(1 - X)
  if (den <= 0.0) throw SolverError("kernel: det(1 - R1 R2 e^{-2K3 d}) <= 0");
  if (mode == KernelMode::kForce) return y * y * (tr - 2.0 * det) / den;
  return y * std::log(den);
}

// general path: biaxial layers, phi averaged with the fixed Gauss rule on
// (0, pi/2); the integrand is even about both phi axes
InnerResult inner_general(const Scenario& s, double xi, KernelMode mode, double rel_tol) {
  std::vector<double> pn, pw;
  gauss_legendre(s.quad.phi_nodes, 0.0, kPi / 2.0, pn, pw);
  const double y0 = 2.0 * xi * s.gap / kLightSpeed;
  long long evals = 0;
  BatchIntegrand f = [&](std::span<const double> y, std::span<double> out) {
    for (size_t i = 0; i < y.size(); ++i) {
      const double K3 = y[i] / (2.0 * s.gap);
      const double k2 = (K3 - xi / kLightSpeed) * (K3 + xi / kLightSpeed);
      const double k = std::sqrt(std::max(k2, 0.0));
      double acc = 0.0;
      for (int j = 0; j < s.quad.phi_nodes; ++j) {
        TransverseWave w{k, pn[j], xi};
        const ReflectionMatrix R1 = layer_reflection(s.layer1, w);
        const ReflectionMatrix R2 = layer_reflection(s.layer2, w);
        acc += pw[j] * kernel_node_general(R1, R2, y[i], mode);
      }
      out[i] = acc * (2.0 / kPi); // phi average
      evals += s.quad.phi_nodes;
    }
  };
  QuadResult q = integrate_panels(f, inner_edges(y0), rel_tol, inner_floor(y0, kGeneralNoise),
                                  s.quad.k_budget);
  if (!std::isfinite(q.value)) throw SolverError("non-finite inner integrand");
  return {q.value, q.error, evals, q.converged};
}

bool diagonal_scenario(const Scenario& s) {
  return s.layer1.material->in_plane_isotropic() && s.layer2.material->in_plane_isotropic();
}

InnerResult inner_at_xi(const Scenario& s, double xi, KernelMode mode, double rel_tol) {
  return diagonal_scenario(s) ? inner_diag(s, xi, mode, rel_tol)
                              : inner_general(s, xi, mode, rel_tol);
}

// outer xi panels: log transform with the exponential cutoff at mult * c/d
std::vector<double> outer_edges_log(double c_over_d, double mult) {
  std::vector<double> r;
  for (double m : {1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0})
    if (m < mult) r.push_back(std::log(m * c_over_d));
  r.push_back(std::log(mult * c_over_d));
  return r;
}

struct OuterResult {
  double value = 0.0;
  double error = 0.0; // includes propagated inner error
  long long evals = 0;
  int xi_nodes = 0;
  bool converged = true;
};

OuterResult outer_integral(const Scenario& s, KernelMode mode) {
  s.quad.validate();
  const double c_over_d = kLightSpeed / s.gap;
  const double inner_tol = s.quad.rel_tol / 20.0;

  OuterResult res;
  bool inner_ok = true;

  auto eval_batch = [&](std::span<const double> t, std::span<double> out, bool log_space) {
    std::vector<InnerResult> rs(t.size());
    parallel_for(static_cast<int>(t.size()), s.quad.threads, [&](int i) {
      const double xi = log_space ? std::exp(t[i]) : t[i];
      rs[i] = inner_at_xi(s, xi, mode, inner_tol);
    });
    for (size_t i = 0; i < t.size(); ++i) {
      const double xi = log_space ? std::exp(t[i]) : t[i];
      out[i] = log_space ? xi * rs[i].value : rs[i].value; // d xi = xi d(ln xi)
      res.evals += rs[i].evals;
      inner_ok = inner_ok && rs[i].converged;
    }
    res.xi_nodes += static_cast<int>(t.size());
  };

  // main log-transformed region
  BatchIntegrand main_fn = [&](std::span<const double> t, std::span<double> out) {
    eval_batch(t, out, true);
  };
  QuadResult main = integrate_panels(main_fn, outer_edges_log(c_over_d, s.quad.cutoff_mult),
                                     s.quad.rel_tol, outer_floor(s.gap), 400LL * s.quad.k_budget);

  // the [0, 1e-8 c/d] sliver, one unrefined panel
  BatchIntegrand lin_fn = [&](std::span<const double> t, std::span<double> out) {
    eval_batch(t, out, false);
  };
  QuadResult lin = integrate_panels(lin_fn, {0.0, 1e-8 * c_over_d}, 1.0,
                                    std::fabs(main.value) + outer_floor(s.gap), 15);

  res.value = main.value + lin.value;
  // inner integrals run at inner_tol relative plus their absolute floors
  const double noise = diagonal_scenario(s) ? kDiagNoise : kGeneralNoise;
  res.error = main.error + lin.error + inner_tol * std::fabs(res.value) + outer_floor(s.gap) +
              inner_floor_aggregate(s.gap, noise);
  res.converged = main.converged && inner_ok;
  return res;
}

} // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw std::domain_error("quadrature: rel_tol must be > 0");
  if (cutoff_mult < 20.0) throw std::domain_error("quadrature: cutoff multiplier must be >= 20");
  if (k_budget < 90) throw std::domain_error("quadrature: k budget too small");
  if (phi_nodes < 4) throw std::domain_error("quadrature: need at least 4 phi nodes");
  if (threads < 1) throw std::domain_error("quadrature: threads must be >= 1");
}

double ideal_normalization(double gap) {
  if (!(gap > 0.0)) throw std::domain_error("ideal_normalization: gap must be > 0");
  return kHbar * kLightSpeed * kPi * kPi / (240.0 * gap * gap * gap * gap);
}

EnergyResult casimir_energy_zero_T(const Scenario& s) {
  if (s.temperature != 0.0) throw std::domain_error("casimir_energy_zero_T: T must be 0");
  OuterResult o = outer_integral(s, KernelMode::kEnergy);
  const double pref = kHbar / (16.0 * kPi * kPi * sq(s.gap));
  EnergyResult r;
  r.energy = pref * o.value;
  r.abs_error = pref * o.error;
  r.converged = o.converged;
  r.evals = o.evals;
  if (!o.converged) throw QuadratureError("casimir_energy_zero_T: tolerance not met");
  return r;
}

ForceResult casimir_force_zero_T(const Scenario& s) {
  if (s.temperature != 0.0) throw std::domain_error("casimir_force_zero_T: T must be 0");
  OuterResult o = outer_integral(s, KernelMode::kForce);
  const double pref = kHbar / (16.0 * kPi * kPi * s.gap * s.gap * s.gap);
  ForceResult r;
  r.pressure = pref * o.value;
  r.abs_error = pref * o.error;
  r.F_over_FC = r.pressure / ideal_normalization(s.gap);
  r.converged = o.converged;
  r.evals = o.evals;
  r.xi_nodes = o.xi_nodes;
  if (!o.converged) throw QuadratureError("casimir_force_zero_T: tolerance not met");
  return r;
}

namespace {

// n = 0 term: k-integral of the zero-mode kernel, y = 2 k d
InnerResult zero_mode_integral(const Scenario& s, double rel_tol) {
  BatchIntegrand f = [&](std::span<const double> y, std::span<double> out) {
    for (size_t i = 0; i < y.size(); ++i) {
      const double k = y[i] / (2.0 * s.gap);
      const ReflectionMatrix R1 = layer_zero_mode(s.layer1, k);
      const ReflectionMatrix R2 = layer_zero_mode(s.layer2, k);
      out[i] = kernel_node_general(R1, R2, y[i], KernelMode::kForce);
    }
  };
  QuadResult q = integrate_panels(f, inner_edges(0.0), rel_tol,
                                  inner_floor(0.0, kDiagNoise), s.quad.k_budget);
  if (!std::isfinite(q.value)) throw SolverError("non-finite zero-mode integrand");
  return {q.value, q.error, q.evals, q.converged};
}

} // namespace

ForceResult zero_mode_pressure(const Scenario& s) {
  if (!(s.temperature > 0.0)) throw std::domain_error("zero_mode_pressure: needs T > 0");
  s.quad.validate();
  InnerResult z = zero_mode_integral(s, s.quad.rel_tol);
  const double pref = kBoltzmann * s.temperature / (16.0 * kPi * s.gap * s.gap * s.gap);
  ForceResult r;
  r.pressure = pref * z.value;
  r.abs_error = pref * z.error;
  r.F_over_FC = r.pressure / ideal_normalization(s.gap);
  r.converged = z.converged;
  r.evals = z.evals;
  r.matsubara_terms = 1;
  return r;
}

ForceResult casimir_force_finite_T(const Scenario& s) {
  if (!(s.temperature > 0.0)) throw std::domain_error("casimir_force_finite_T: needs T > 0");
  s.quad.validate();
  const double xi1 = 2.0 * kPi * kBoltzmann * s.temperature / kHbar;
  const double inner_tol = s.quad.rel_tol / 20.0;

  InnerResult z = zero_mode_integral(s, inner_tol);
  double sum = 0.5 * z.value;
  double err = 0.5 * z.error;
  long long evals = z.evals;
  bool ok = z.converged;

  // summation in deterministic blocks; truncate after three consecutive
  // negligible terms
  const int block = std::max(2 * s.quad.threads, 8);
  int n_done = 0, consec_small = 0, terms = 1;
  double max_abs = std::fabs(sum);
  const long long n_cap = 2000000;
  while (consec_small < 3) {
    std::vector<InnerResult> rs(block);
    parallel_for(block, s.quad.threads, [&](int i) {
      const double xi = (n_done + 1 + i) * xi1;
      rs[i] = inner_at_xi(s, xi, KernelMode::kForce, inner_tol);
    });
    for (int i = 0; i < block && consec_small < 3; ++i) {
      sum += rs[i].value;
      err += rs[i].error;
      evals += rs[i].evals;
      ok = ok && rs[i].converged;
      ++terms;
      max_abs = std::max(max_abs, std::fabs(rs[i].value));
      if (std::fabs(rs[i].value) < s.quad.matsubara_tol * std::max(std::fabs(sum), max_abs))
        ++consec_small;
      else
        consec_small = 0;
    }
    n_done += block;
    if (n_done > n_cap) throw QuadratureError("Matsubara sum failed to truncate");
  }

  const double pref = kBoltzmann * s.temperature / (8.0 * kPi * s.gap * s.gap * s.gap);
  ForceResult r;
  r.pressure = pref * sum;
  r.abs_error = pref * err;
  r.F_over_FC = r.pressure / ideal_normalization(s.gap);
  r.converged = ok;
  r.evals = evals;
  r.matsubara_terms = terms;
  if (!ok) throw QuadratureError("casimir_force_finite_T: tolerance not met");
  return r;
}

ForceResult casimir_force(const Scenario& s) {
  return s.temperature > 0.0 ? casimir_force_finite_T(s) : casimir_force_zero_T(s);
}

// ---------------------------------------------------------------------------
// first order in the in-plane anisotropy
// ---------------------------------------------------------------------------

ForceResult casimir_force_perturbative(const Scenario& s) {
  if (s.temperature != 0.0)
    throw std::domain_error("casimir_force_perturbative: implemented at T = 0");
  s.quad.validate();
  if (!s.layer1.material->in_plane_isotropic())
    throw std::domain_error("perturbative force: layer1 must be in-plane isotropic");
  if (!s.layer1.is_halfspace() || !s.layer2.is_halfspace())
    throw std::domain_error("perturbative force: half-spaces only");

  const double c_over_d = kLightSpeed / s.gap;
  const double inner_tol = s.quad.rel_tol / 20.0;

  // inner integral with the phi-averaged first-order correction
  auto inner = [&](double xi) -> InnerResult {
    const DiagonalTensorResponse t2 = s.layer2.material->eval(ImaginaryFrequency(xi));
    if (t2.mu_xx != t2.mu_yy || std::fabs(t2.mu_zz - 1.0) > 1e-12)
      throw std::domain_error("perturbative force: layer2 needs isotropic in-plane mu, mu_zz = 1");
    const double delta = t2.eps_yy / t2.eps_xx - 1.0;
    const double e = t2.eps_xx, ez = t2.eps_zz, m = t2.mu_xx;

    const DiagonalTensorResponse t1 = s.layer1.material->eval(ImaginaryFrequency(xi));
    const double kc2_fac = sq(kLightSpeed / xi);

    BatchIntegrand f = [&](std::span<const double> y, std::span<double> out) {
      for (size_t i = 0; i < y.size(); ++i) {
        const double K3 = y[i] / (2.0 * s.gap);
        const double k2 = (K3 - xi / kLightSpeed) * (K3 + xi / kLightSpeed);
        TransverseWave w{std::sqrt(std::max(k2, 0.0)), 0.0, xi};
        const ReflectionMatrix R1 = uniaxial_reflection(t1, w);

        const double kc2 = k2 * kc2_fac;
        const double q_in = kLightSpeed * K3 / xi;
        const double q_te = std::sqrt(m * (e + kc2));
        const double q_tm = std::sqrt(e * (m + kc2 / ez));
        const double r_te0 = (m * q_in - q_te) / (m * q_in + q_te);
        const double r_tm0 = (e * q_in - q_tm) / (e * q_in + q_tm);
        // <cos^2 phi> = <sin^2 phi> = 1/2
        const double r21_te = -0.25 * e * m * (1.0 + r_te0) / (q_te * (q_te + m * q_in));
        const double r21_tm = 0.25 * q_in * e * (1.0 - r_tm0) / (q_tm + e * q_in);

        const double ey = std::exp(-y[i]);
        double acc = 0.0;
        {
          const double x = R1.te_te * r_te0 * ey;
          acc += x / (1.0 - x) + delta * R1.te_te * r21_te * ey / sq(1.0 - x);
        }
        {
          const double x = R1.tm_tm * r_tm0 * ey;
          acc += x / (1.0 - x) + delta * R1.tm_tm * r21_tm * ey / sq(1.0 - x);
        }
        out[i] = y[i] * y[i] * acc;
      }
    };
    const double y0 = 2.0 * xi * s.gap / kLightSpeed;
    QuadResult q = integrate_panels(f, inner_edges(y0), inner_tol,
                                    inner_floor(y0, kDiagNoise), s.quad.k_budget);
    return {q.value, q.error, q.evals, q.converged};
  };

  bool inner_ok = true;
  long long evals = 0;
  int xi_nodes = 0;
  BatchIntegrand outer_fn = [&](std::span<const double> t, std::span<double> out) {
    std::vector<InnerResult> rs(t.size());
    parallel_for(static_cast<int>(t.size()), s.quad.threads,
                 [&](int i) { rs[i] = inner(std::exp(t[i])); });
    for (size_t i = 0; i < t.size(); ++i) {
      out[i] = std::exp(t[i]) * rs[i].value;
      evals += rs[i].evals;
      inner_ok = inner_ok && rs[i].converged;
    }
    xi_nodes += static_cast<int>(t.size());
  };
  QuadResult main = integrate_panels(outer_fn, outer_edges_log(c_over_d, s.quad.cutoff_mult),
                                     s.quad.rel_tol, outer_floor(s.gap), 400LL * s.quad.k_budget);

  const double pref = kHbar / (16.0 * kPi * kPi * s.gap * s.gap * s.gap);
  ForceResult r;
  r.pressure = pref * main.value;
  r.abs_error = pref * (main.error + inner_tol * std::fabs(main.value) + outer_floor(s.gap) +
                        inner_floor_aggregate(s.gap, kDiagNoise));
  r.F_over_FC = r.pressure / ideal_normalization(s.gap);
  r.converged = main.converged && inner_ok;
  r.evals = evals;
  r.xi_nodes = xi_nodes;
  if (!r.converged) throw QuadratureError("casimir_force_perturbative: tolerance not met");
  return r;
}

// ---------------------------------------------------------------------------
// Casimir-Polder
// ---------------------------------------------------------------------------

namespace {

// magnitude bound of the CP bracket integrals for an ideal surface, used as
// the noise-floor scale
double cp_inner_scale(double y0, double xi, double z) {
  const double f = kLightSpeed / (2.0 * z * xi);
  return 2.0 * (1.0 + f * f) * (1.0 + y0 * y0) * std::exp(-y0) * 10.0;
}

// [r_TE - (1 + 2 k^2 c^2/xi^2) r_TM] integrals against e^{-y} and y^2 e^{-y}
void cp_inner(const Layer& surface, double z, double xi, const QuadratureSpec& quad,
              double rel_tol, InnerResult& j0, InnerResult& j2) {
  const double y0 = 2.0 * xi * z / kLightSpeed;
  auto bracket = [&](double y) {
    const double K3 = y / (2.0 * z);
    const double k2 = (K3 - xi / kLightSpeed) * (K3 + xi / kLightSpeed);
    TransverseWave w{std::sqrt(std::max(k2, 0.0)), 0.0, xi};
    const ReflectionMatrix R = layer_reflection(surface, w);
    const double fac = 1.0 + 2.0 * k2 * sq(kLightSpeed / xi);
    return std::exp(-y) * (R.te_te - fac * R.tm_tm);
  };
  BatchIntegrand f0 = [&](std::span<const double> y, std::span<double> out) {
    for (size_t i = 0; i < y.size(); ++i) out[i] = bracket(y[i]);
  };
  BatchIntegrand f2 = [&](std::span<const double> y, std::span<double> out) {
    for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] * y[i] * bracket(y[i]);
  };
  const double floor = 1e-13 * cp_inner_scale(y0, xi, z);
  QuadResult q0 = integrate_panels(f0, inner_edges(y0), rel_tol, floor, quad.k_budget);
  QuadResult q2 = integrate_panels(f2, inner_edges(y0), rel_tol, floor, quad.k_budget);
  j0 = {q0.value, q0.error, q0.evals, q0.converged};
  j2 = {q2.value, q2.error, q2.evals, q2.converged};
}

} // namespace

CasimirPolderResult casimir_polder(const AtomParams& atom, const Layer& surface, double z,
                                   const QuadratureSpec& quad) {
  if (!(z > 0.0)) throw std::domain_error("casimir_polder: z must be > 0");
  quad.validate();
  if (!surface.material->in_plane_isotropic())
    throw std::domain_error("casimir_polder: surface must be in-plane isotropic");
  const double c_over_z = kLightSpeed / z;
  const double inner_tol = quad.rel_tol / 20.0;

  bool ok = true;

  // ideal-surface magnitudes of the two outer integrals set the noise floors
  const double scale0 = 3.0 * std::pow(kLightSpeed, 3) * atom.alpha0 / (2.0 * z * z * z);
  const double scale2 = 20.0 * scale0;

  // two outer integrals share the structure: J0 feeds U, J2 feeds U''
  double i0 = 0.0, i2 = 0.0;
  auto run = [&](bool second) -> QuadResult {
    BatchIntegrand fn = [&](std::span<const double> t, std::span<double> out) {
      std::vector<std::pair<InnerResult, InnerResult>> rs(t.size());
      parallel_for(static_cast<int>(t.size()), quad.threads, [&](int i) {
        cp_inner(surface, z, std::exp(t[i]), quad, inner_tol, rs[i].first, rs[i].second);
      });
      for (size_t i = 0; i < t.size(); ++i) {
        const double xi = std::exp(t[i]);
        const double w = xi * sq(xi) * atomic_polarizability(atom, xi); // d xi = xi dt
        const InnerResult& r = second ? rs[i].second : rs[i].first;
        out[i] = w * r.value;
        ok = ok && r.converged;
      }
    };
    return integrate_panels(fn, outer_edges_log(c_over_z, quad.cutoff_mult), quad.rel_tol,
                            1e-12 * (second ? scale2 : scale0), 400LL * quad.k_budget);
  };
  QuadResult q0 = run(false);
  QuadResult q2 = run(true);
  i0 = q0.value;
  i2 = q2.value;

  CasimirPolderResult r;
  const double pref_u = kHbar / (4.0 * kPi * sq(kLightSpeed) * z);
  const double pref_upp = kHbar / (4.0 * kPi * sq(kLightSpeed) * z * z * z);
  r.potential = pref_u * i0;
  r.abs_error_potential =
      pref_u * (q0.error + inner_tol * std::fabs(i0) + 1e-12 * scale0);
  const double upp = pref_upp * i2;
  r.gamma = upp / (2.0 * atom.mass * sq(atom.omega_z));
  r.abs_error_gamma = pref_upp * (q2.error + inner_tol * std::fabs(i2) + 1e-12 * scale2) /
                      (2.0 * atom.mass * sq(atom.omega_z));
  r.converged = q0.converged && q2.converged && ok;
  if (!r.converged) throw QuadratureError("casimir_polder: tolerance not met");
  return r;
}

// ---------------------------------------------------------------------------
// toggles
// ---------------------------------------------------------------------------

MaterialPtr toggled_material(const MaterialPtr& m, ContrastToggle toggle) {
  if (auto iso = std::dynamic_pointer_cast<const IsotropicCompositeMM>(m)) {
    CompositeAxisParams e = iso->eps_params();
    LorentzResonanceParams mu = iso->mu_params();
    if (toggle == ContrastToggle::kMagneticOff)
      mu.strength = 0.0;
    else
      e.resonance.strength = 0.0;
    return std::make_shared<IsotropicCompositeMM>(e, mu);
  }
  if (auto nc = std::dynamic_pointer_cast<const NonConnectedMM>(m)) {
    LorentzResonanceParams e = nc->electric_resonance();
    LorentzResonanceParams mu = nc->magnetic_resonance();
    if (toggle == ContrastToggle::kMagneticOff)
      mu.strength = 0.0;
    else
      e.strength = 0.0;
    return std::make_shared<NonConnectedMM>(nc->filling(), nc->metal(),
                                            nc->host_material().oscillators(), e, mu);
  }
  if (auto ten = std::dynamic_pointer_cast<const TensorMM>(m)) {
    CompositeAxisParams ex = ten->eps_axis(0), ey = ten->eps_axis(1), ez = ten->eps_axis(2);
    LorentzResonanceParams mx = ten->mu_axis(0), my = ten->mu_axis(1), mz = ten->mu_axis(2);
    if (toggle == ContrastToggle::kMagneticOff) {
      mx.strength = my.strength = mz.strength = 0.0;
    } else {
      ex.resonance.strength = ey.resonance.strength = ez.resonance.strength = 0.0;
    }
    return std::make_shared<TensorMM>(ex, ey, ez, mx, my, mz);
  }
  throw std::domain_error("magnetic_contrast: material '" + m->name() + "' has no toggle");
}

ContrastResult magnetic_contrast(const Scenario& s, ContrastToggle toggle) {
  Scenario s2 = s;
  s2.layer2.material = toggled_material(s.layer2.material, toggle);
  const ForceResult base = casimir_force(s);
  const ForceResult tog = casimir_force(s2);
  ContrastResult r;
  r.base = base.pressure;
  r.toggled = tog.pressure;
  r.delta = tog.pressure - base.pressure;
  r.abs_error = base.abs_error + tog.abs_error;
  return r;
}

ContrastResult trap_shift_contrast(const AtomParams& atom, const Layer& surface, double z,
                                   const QuadratureSpec& q, ContrastToggle toggle) {
  Layer toggled = surface;
  toggled.material = toggled_material(surface.material, toggle);
  const CasimirPolderResult base = casimir_polder(atom, surface, z, q);
  const CasimirPolderResult tog = casimir_polder(atom, toggled, z, q);
  ContrastResult r;
  r.base = base.gamma;
  r.toggled = tog.gamma;
  r.delta = tog.gamma - base.gamma;
  r.abs_error = base.abs_error_gamma + tog.abs_error_gamma;
  return r;
}

} // namespace casimir
