#pragma once

#include <optional>
#include <string>

#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

struct QuadratureSpec {
  double rel_tol = 1e-6;        // per-observable relative tolerance
  double cutoff_mult = 30.0;    // xi upper cutoff, in units of c/d
  long long k_budget = 40000;   // evaluation budget of one k-integral
  int phi_nodes = 16;           // fixed azimuthal rule (biaxial media only)
  double matsubara_tol = 1e-8;  // relative tail threshold of the Matsubara sum
  int threads = 1;

  void validate() const;
};

struct Scenario {
  Layer layer1, layer2;
  double gap = 0.0;        // m
  double temperature = 0.0; // K
  std::optional<AtomParams> atom;
  QuadratureSpec quad;
};

struct ForceResult {
  double pressure = 0.0;    // Pa, positive = attraction
  double F_over_FC = 0.0;   // normalized by the ideal-conductor pressure at the same gap
  double abs_error = 0.0;   // Pa
  bool converged = true;
  long long evals = 0;      // reflection-kernel evaluations
  int xi_nodes = 0;         // outer-axis nodes (or Matsubara terms at T > 0)
  int matsubara_terms = 0;
};

struct EnergyResult {
  double energy = 0.0;      // J/m^2, negative for attraction
  double abs_error = 0.0;
  bool converged = true;
  long long evals = 0;
};

struct CasimirPolderResult {
  double potential = 0.0;   // J, negative = attraction
  double gamma = 0.0;       // dimensionless trap-frequency shift
  double abs_error_potential = 0.0;
  double abs_error_gamma = 0.0;
  bool converged = true;
  std::string derivative_scheme = "analytic-under-integral";
};

// F_C/A = hbar c pi^2 / (240 d^4)
double ideal_normalization(double gap);

EnergyResult casimir_energy_zero_T(const Scenario& s);
ForceResult casimir_force_zero_T(const Scenario& s);
ForceResult casimir_force_finite_T(const Scenario& s);
// dispatch on temperature
ForceResult casimir_force(const Scenario& s);

// First order in the in-plane anisotropy delta(i xi) = eps_yy/eps_xx - 1.
// layer2 must be a TensorMM with mu_zz = 1 and in-plane isotropic mu.
ForceResult casimir_force_perturbative(const Scenario& s);

// n = 0 Matsubara term alone (T > 0).
ForceResult zero_mode_pressure(const Scenario& s);

CasimirPolderResult casimir_polder(const AtomParams& atom, const Layer& surface, double z,
                                   const QuadratureSpec& q);

enum class ContrastToggle { kMagneticOff, kElectricResonanceOff };

struct ContrastResult {
  double base = 0.0;     // P(1): full model
  double toggled = 0.0;  // P(2): resonance strength zeroed
  double delta = 0.0;    // P(2) - P(1)
  double abs_error = 0.0;
};

// Evaluates the scenario with and without the toggled resonance strength of
// layer2 and returns the difference with a combined error estimate.
ContrastResult magnetic_contrast(const Scenario& s, ContrastToggle toggle);
// Same toggle applied to the Casimir-Polder trap shift: gamma_toggled - gamma_base.
ContrastResult trap_shift_contrast(const AtomParams& atom, const Layer& surface, double z,
                                   const QuadratureSpec& q, ContrastToggle toggle);

// Apply a toggle to a supported material (zeroes the resonance strength).
MaterialPtr toggled_material(const MaterialPtr& m, ContrastToggle toggle);

} // namespace casimir
