#include "rayleigh/modes.hpp"

#include <cmath>
#include <string>

#include "rayleigh/error.hpp"

namespace rayleigh {

ComplexSpeed::ComplexSpeed(double re, double im_neg) : re_(re), im_neg_(im_neg) {
  if (!std::isfinite(re) || !std::isfinite(im_neg) || re < 0.0 || im_neg < 0.0) {
    throw SolverError(ErrorCode::InadmissibleSpeed,
                      "v = " + std::to_string(re) + " - " + std::to_string(im_neg) + "i is outside Re v >= 0, Im v <= 0");
  }
  if (re == 0.0 && im_neg == 0.0) throw SolverError(ErrorCode::InadmissibleSpeed, "v = 0");
  // Keep the imaginary zero positive so real speeds land on the upper lip of
  // the square-root branch cut.
  value_ = cd(re, im_neg == 0.0 ? 0.0 : -im_neg);
}

ComplexSpeed ComplexSpeed::from_complex(cd v) { return ComplexSpeed(v.real(), -v.imag()); }

AttenuationExponent p_from_t(const ComplexSpeed& v, double t, int mode_index) {
  if (!(t > 0.0)) throw SolverError(ErrorCode::DomainError, "mode root t must be positive");
  const cd vv = v.value();
  cd p = std::sqrt(vv * vv / t - 1.0);
  if (p.imag() < 0.0) p = -p;
  if (!(p.imag() > 0.0)) {
    throw SolverError(ErrorCode::NonDecaying, "mode " + std::to_string(mode_index) + ": real v >= sqrt(t_k) = " +
                                                  std::to_string(std::sqrt(t)));
  }
  return {p, mode_index};
}

BranchResiduals branch_residuals(const ComplexSpeed& v, double t, cd p) {
  const double al = p.real(), be = p.imag();
  const double vr = v.re(), vi = v.im_neg();
  const double scale = t * (al * al + be * be + 1.0);
  return {std::abs(t * (al * al - be * be + 1.0) - (vr * vr - vi * vi)) / scale,
          std::abs(t * al * be + vr * vi) / scale};
}

Matrix5 assemble_Dp(const MaterialCoefficients& m, cd v, cd p) {
  const double pm = m.p_modulus();
  const double es = m.eps_sum();
  const double e12 = m.eps1 + m.eps2;
  const double d13 = m.d1 + m.d3;
  const double d = m.d();
  const cd vb = v * m.beta;
  const cd vm = v * m.m;
  const cd v2 = v * v;

  Matrix5 q1 = Matrix5::Zero();
  q1(0, 0) = m.mu;    q1(0, 2) = m.eps2;
  q1(1, 1) = pm;      q1(1, 3) = es;
  q1(2, 0) = m.eps2;  q1(2, 2) = m.d2;
  q1(3, 1) = es;      q1(3, 3) = d;
  q1(4, 4) = m.k;

  Matrix5 q2 = Matrix5::Zero();
  q2(0, 1) = m.lambda + m.mu;  q2(0, 3) = e12;
  q2(1, 0) = m.lambda + m.mu;  q2(1, 2) = e12;  q2(1, 4) = vb;
  q2(2, 1) = e12;              q2(2, 3) = d13;
  q2(3, 0) = e12;              q2(3, 2) = d13;  q2(3, 4) = vm;
  q2(4, 1) = vb;               q2(4, 3) = vm;

  // The (3,3) entry is d - b v^2 with d = d1 + d2 + d3.
  Matrix5 r = Matrix5::Zero();
  r(0, 0) = pm - m.rho * v2;  r(0, 2) = es;              r(0, 4) = vb;
  r(1, 1) = m.mu - m.rho * v2;  r(1, 3) = m.eps2;
  r(2, 0) = es;               r(2, 2) = d - m.b * v2;    r(2, 4) = vm;
  r(3, 1) = m.eps2;           r(3, 3) = m.d2 - m.b * v2;
  r(4, 0) = vb;               r(4, 2) = vm;              r(4, 4) = m.k - m.a * v2;

  return p * p * q1 + p * q2 + r;
}

void verify_kernel(const Matrix5& d, const Vector5& u, int mode_index) {
  const std::string tag = "mode " + std::to_string(mode_index);
  if (u.norm() == 0.0) throw SolverError(ErrorCode::DegenerateKernel, tag + ": zero kernel vector");
  const auto basis = numeric_nullspace(d);
  if (basis.size() != 1) {
    throw SolverError(ErrorCode::DegenerateKernel, tag + ": numeric kernel has dimension " + std::to_string(basis.size()));
  }
  if (angle_sine(u, basis.front()) > kKernelAngleTol) {
    throw SolverError(ErrorCode::DegenerateKernel, tag + ": closed-form vector is not in the numeric kernel");
  }
}

ModeBasis mode_vector(const MaterialCoefficients& m, const ComplexSpeed& v, const ModeRoot& root) {
  if (m.m == 0.0 || m.beta == 0.0 || m.eps2 == 0.0) {
    throw SolverError(ErrorCode::UnsupportedCoupling, "closed-form kernels need m, beta and eps2 nonzero");
  }

  ModeBasis mb;
  mb.mode = root;
  mb.p = p_from_t(v, root.t, root.index);
  const cd p = mb.p.p;
  const double t = root.t;

  if (root.source == RootSource::q2) {
    const double phi = (m.b / m.eps2) * (t - m.d2 / m.b);
    mb.u_tilde << -p * phi, phi, -p, 1.0, 0.0;
    mb.aux["Phi"] = phi;
    mb.polarization = Polarization::transverse;
  } else {
    const double es = m.eps_sum();
    const double gamma = m.b * m.beta * (t - m.d() / m.b) + m.m * es;
    const double lam = m.rho * m.m * (t - m.p_modulus() / m.rho) + m.beta * es;
    const cd temp = v.value() / (m.m * m.beta * t) * (gamma * lam - es * (m.beta * gamma + m.m * lam));
    mb.u_tilde << gamma, p * gamma, lam, p * lam, temp;
    mb.aux["Gamma"] = gamma;
    mb.aux["Lambda"] = lam;
    mb.polarization = Polarization::longitudinal;
  }

  verify_kernel(assemble_Dp(m, v.value(), p), mb.u_tilde, root.index);
  return mb;
}

PolarizationClass polarization_check(const ModeBasis& mb, double rel_tol) {
  const cd p = mb.p.p;
  const double n_norm = std::sqrt(1.0 + std::norm(p));
  const Vector5& u = mb.u_tilde;

  auto pair_norm = [](cd x, cd y) { return std::sqrt(std::norm(x) + std::norm(y)); };
  const double su = rel_tol * pair_norm(u(0), u(1)) * n_norm;
  const double sa = rel_tol * pair_norm(u(2), u(3)) * n_norm;

  if (std::abs(u(0) + u(1) * p) <= su && std::abs(u(2) + u(3) * p) <= sa) return PolarizationClass::orthogonal;
  if (std::abs(u(0) * p - u(1)) <= su && std::abs(u(2) * p - u(3)) <= sa) return PolarizationClass::parallel;
  throw SolverError(ErrorCode::Unclassified, "mode " + std::to_string(mb.mode.index));
}

}  // namespace rayleigh
