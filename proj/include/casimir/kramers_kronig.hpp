#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir {

// Real-axis absorption sampler handed to the Kramers-Kronig transform.
// `features` lists frequencies (rad/s) where Im f is sharply structured:
// the quadrature places dedicated panels around each. `omega_max` bounds the
// sampled range; beyond it Im f is treated as zero (for effective-medium
// samplers this is the validity cutoff, for closed forms it may be huge).
struct ImPartSampler {
  std::function<double(double)> im;       // Im f(omega), omega > 0
  std::vector<double> features;           // resonance positions
  double feature_width = 0.0;             // typical half-width of features
  double omega_max = 0.0;                 // hard upper truncation (0 = auto tail)
};

struct KkResult {
  double value = 1.0;       // f(i xi)
  double error = 0.0;       // quadrature error estimate
  double truncation = 0.0;  // frequency at which the tail was cut
};

// f(i xi) = 1 + (2/pi) Int_0^inf y Im f(y) / (xi^2 + y^2) dy
KkResult kk_to_imaginary_axis(const ImPartSampler& s, double xi, double rel_tol = 1e-8);

// KK-backed material: polaritonic spheres in a host, with the real-axis
// extended Maxwell Garnett response transformed to the imaginary axis. The
// real-axis sampler is truncated at the effective-medium validity boundary
// x = omega R / c = 0.3. Static limits are cached at construction; evaluation
// is a pure adaptive transform, safe from any number of threads.
class SphereCompositeMaterial final : public Material {
 public:
  SphereCompositeMaterial(double filling, double radius, PolaritonicParams inclusion,
                          double host_eps = 1.0);

  DiagonalTensorResponse eval(ImaginaryFrequency f) const override;
  ZeroModeLimits zero_mode_limits() const override;
  std::string name() const override { return "spheres_kk"; }

  double filling() const { return filling_; }
  double radius() const { return radius_; }
  const PolaritonicParams& inclusion() const { return inclusion_; }
  KkResult eps_direct(double xi) const;
  KkResult mu_direct(double xi) const;
  double validity_cutoff() const { return omega_cut_; }

 private:
  ImPartSampler eps_sampler() const;
  ImPartSampler mu_sampler() const;

  double filling_, radius_;
  PolaritonicParams inclusion_;
  double host_eps_;
  double omega_cut_; // x = 0.3 validity boundary
  double eps0_ = 1.0, mu0_ = 1.0;
};

} // namespace casimir
