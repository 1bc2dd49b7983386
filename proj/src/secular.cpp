#include "rayleigh/secular.hpp"

#include <cmath>
#include <stdexcept>

#include "rayleigh/error.hpp"

namespace rayleigh {

Matrix5 assemble_Sp(const MaterialCoefficients& m, cd v, cd p) {
  const double es = m.eps_sum();
  Matrix5 s;
  // clang-format off
  s << m.mu * p,     m.mu,                m.eps2 * p,   m.eps2,         0.0,
       m.lambda,     m.p_modulus() * p,   m.eps1,       es * p,         v * m.beta,
       m.eps2 * p,   m.eps1,              m.d2 * p,     m.d3,           0.0,
       m.eps2,       es * p,              m.d1,         m.d() * p,      v * m.m,
       0.0,          v * m.beta,          0.0,          v * m.m,        m.k * p;
  // clang-format on
  return s;
}

SecularMatrix secular_matrix_from_modes(const MaterialCoefficients& m, const ComplexSpeed& v,
                                        const std::array<ModeBasis, 5>& modes) {
  SecularMatrix sm;
  sm.modes = modes;
  for (int k = 0; k < 5; ++k) {
    sm.A.col(k) = assemble_Sp(m, v.value(), modes[k].p.p) * modes[k].u_tilde;
  }
  return sm;
}

SecularMatrix secular_matrix(const MaterialCoefficients& m, const ComplexSpeed& v) {
  const RootSet roots = mode_speeds(m);
  std::array<ModeBasis, 5> modes;
  for (int k = 0; k < 5; ++k) modes[k] = mode_vector(m, v, roots.roots[k]);
  return secular_matrix_from_modes(m, v, modes);
}

cd secular_det(const MaterialCoefficients& m, const ComplexSpeed& v) { return determinant(secular_matrix(m, v).A); }

double objective_F(const MaterialCoefficients& m, double vR, double vI) {
  cd det;
  try {
    det = secular_det(m, ComplexSpeed(vR, vI));
  } catch (const ModeFailure&) {
    throw;
  } catch (const SolverError& e) {
    throw ModeFailure(e);
  }
  const double mag = std::abs(det);
  if (mag == 0.0) return kZeroDetF;
  return std::log(mag);
}

AmplitudeVector amplitudes_of(const Matrix5& A, double ratio) {
  Eigen::JacobiSVD<Matrix5> svd(A, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 5, 1> s = svd.singularValues();
  if (!(s(4) <= ratio * s(0))) {
    throw SolverError(ErrorCode::NotARoot, "sigma_min / sigma_max = " + std::to_string(s(4) / s(0)));
  }
  Vector5 g = svd.matrixV().col(4);
  int big = 0;
  for (int i = 1; i < 5; ++i) {
    if (std::abs(g(i)) > std::abs(g(big))) big = i;
  }
  g /= g(big);
  g(big) = 1.0;
  return {g};
}

AmplitudeVector amplitudes(const MaterialCoefficients& m, const ComplexSpeed& v, double ratio) {
  return amplitudes_of(secular_matrix(m, v).A, ratio);
}

FieldState field_eval(const MaterialCoefficients& m, const ComplexSpeed& v, const AmplitudeVector& gamma,
                      double kappa, double x1, double x2, double t) {
  if (!(x2 >= 0.0)) throw std::invalid_argument("field_eval: x2 must be >= 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("field_eval: kappa must be > 0");

  const SecularMatrix sm = secular_matrix(m, v);
  const cd i(0.0, 1.0);
  Vector5 fields = Vector5::Zero();
  FieldState out;
  out.traction = Vector5::Zero();
  for (int k = 0; k < 5; ++k) {
    const cd phase = std::exp(i * kappa * (x1 - v.value() * t + sm.modes[k].p.p * x2));
    const cd weight = gamma.gamma(k) * phase;
    fields += weight * sm.modes[k].u_tilde;
    const Vector5 term = i * kappa * weight * sm.A.col(k);
    out.traction += term;
    out.traction_scale += term.norm();
  }
  out.u1 = fields(0);
  out.u2 = fields(1);
  out.tau1 = fields(2);
  out.tau2 = fields(3);
  out.chi = fields(4);
  return out;
}

}  // namespace rayleigh
