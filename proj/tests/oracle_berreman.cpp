#include "oracle_berreman.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace casimir::testing {

ReflectionMatrix berreman_reflection(const DiagonalTensorResponse& t, const TransverseWave& w) {
  using cd = std::complex<double>;
  using Eigen::Matrix4cd;
  using Eigen::Vector4cd;

  const double s = std::sin(w.phi), c = std::cos(w.phi);
  // principal tensors rotated into the incidence frame
  const cd exx = t.eps_xx * c * c + t.eps_yy * s * s;
  const cd eyy = t.eps_xx * s * s + t.eps_yy * c * c;
  const cd exy = (t.eps_xx - t.eps_yy) * s * c;
  const cd mxx = t.mu_xx * c * c + t.mu_yy * s * s;
  const cd myy = t.mu_xx * s * s + t.mu_yy * c * c;
  const cd mxy = (t.mu_xx - t.mu_yy) * s * c;

  const cd omega = cd(0.0, 1.0) * w.xi; // omega = i xi
  const cd w2 = omega * omega / (kLightSpeed * kLightSpeed);
  const cd kk = cd(w.k_par * w.k_par, 0.0);

  // psi = (E_x, E_y, H_x, H_y), psi' = i (omega/c) D psi
  Matrix4cd D = Matrix4cd::Zero();
  D(0, 2) = mxy; // mu_yx = mu_xy
  D(0, 3) = myy - kk / (w2 * t.eps_zz);
  D(1, 2) = -mxx;
  D(1, 3) = -mxy;
  D(2, 0) = -exy; // eps_yx = eps_xy
  D(2, 1) = kk / (w2 * t.mu_zz) - eyy;
  D(3, 0) = exx;
  D(3, 1) = exy;

  Eigen::ComplexEigenSolver<Matrix4cd> es(D);
  // decaying transmitted modes: e^{i (omega/c) lambda z} with omega = i xi
  // decays for Re lambda > 0
  Matrix4cd modes;
  int found = 0;
  for (int i = 0; i < 4 && found < 2; ++i) {
    if (es.eigenvalues()(i).real() > 0.0) {
      modes.col(found++) = es.eigenvectors().col(i);
    }
  }
  if (found != 2) throw std::runtime_error("berreman oracle: expected two decaying modes");

  const double q_in = kLightSpeed * w.K3() / w.xi; // c q0 / omega, real
  // vacuum tangential-field bases (E_x, E_y, H_x, H_y)
  const Vector4cd te_in(0.0, 1.0, -q_in, 0.0);
  const Vector4cd te_ref(0.0, 1.0, q_in, 0.0);
  const Vector4cd tm_in(q_in, 0.0, 0.0, 1.0);
  const Vector4cd tm_ref(-q_in, 0.0, 0.0, 1.0);

  Matrix4cd M;
  M.col(0) = te_ref;
  M.col(1) = tm_ref;
  M.col(2) = -modes.col(0);
  M.col(3) = -modes.col(1);

  const Vector4cd ste = M.partialPivLu().solve(-te_in);
  const Vector4cd stm = M.partialPivLu().solve(-tm_in);

  ReflectionMatrix r;
  r.te_te = ste(0).real();
  r.te_tm = ste(1).real();
  r.tm_te = stm(0).real();
  r.tm_tm = stm(1).real();
  return r;
}

} // namespace casimir::testing
