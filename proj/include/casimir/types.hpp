#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "casimir/constants.hpp"

namespace casimir {

// Angular frequency on the positive imaginary axis, omega = i*xi.
// All response functions in this library are real and smooth here.
struct ImaginaryFrequency {
  double xi; // rad/s, >= 0

  explicit ImaginaryFrequency(double value) : xi(value) {
    if (!(xi >= 0.0) || !std::isfinite(xi))
      throw std::domain_error("imaginary frequency must be finite and >= 0");
  }
};

// Diagonal permittivity/permeability tensors evaluated at one imaginary
// frequency. Entries are real; passive closed-form models give values >= 1.
struct DiagonalTensorResponse {
  double eps_xx = 1.0, eps_yy = 1.0, eps_zz = 1.0;
  double mu_xx = 1.0, mu_yy = 1.0, mu_zz = 1.0;

  bool in_plane_isotropic() const {
    return eps_xx == eps_yy && mu_xx == mu_yy;
  }
  bool isotropic() const {
    return in_plane_isotropic() && eps_xx == eps_zz && mu_xx == mu_zz;
  }
};

// Transverse wave labels at an interface: k_par is the conserved transverse
// wavenumber, phi the azimuth of the incidence plane relative to the medium
// x-axis, xi the imaginary frequency.
struct TransverseWave {
  double k_par; // 1/m, >= 0
  double phi;   // rad
  double xi;    // rad/s, > 0 (the xi = 0 limit goes through zero_mode_reflection)

  double K3() const { return std::sqrt(k_par * k_par + (xi / kLightSpeed) * (xi / kLightSpeed)); }
};

// 2x2 reflection matrix in the (TE, TM) basis. Field r_ab is the reflected
// b-polarized amplitude for a unit incident a-polarized wave. On the
// imaginary axis all entries are real.
struct ReflectionMatrix {
  double te_te = 0.0;
  double te_tm = 0.0;
  double tm_te = 0.0;
  double tm_tm = 0.0;
};

// xi -> 0 limits of a material, as needed by the n = 0 Matsubara term.
//   eps0, mu0     : static in-plane responses, +infinity for conductor-like models
//   eps_ratio     : lim eps_xx/eps_zz (finite even when both diverge)
//   mu_ratio      : lim mu_xx/mu_zz
//   we            : lim eps_xx(xi) xi^2 / c^2  (electric plasma constant, 1/m^2)
//   wm            : lim mu_xx(xi) xi^2 / c^2   (magnetic plasma constant, 1/m^2)
struct ZeroModeLimits {
  double eps0 = 1.0;
  double mu0 = 1.0;
  double eps_ratio = 1.0;
  double mu_ratio = 1.0;
  double we = 0.0;
  double wm = 0.0;
};

class UnsupportedZeroMode : public std::runtime_error {
 public:
  explicit UnsupportedZeroMode(const std::string& what) : std::runtime_error(what) {}
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace casimir
