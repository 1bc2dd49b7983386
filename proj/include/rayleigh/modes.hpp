#pragma once

#include <array>
#include <map>
#include <string>

#include "rayleigh/linalg.hpp"
#include "rayleigh/material.hpp"
#include "rayleigh/spectrum.hpp"

namespace rayleigh {

/// Candidate surface-wave speed v = re - im_neg * i. The real part is the
/// phase speed and im_neg the temporal damping rate; both must be >= 0.
class ComplexSpeed {
 public:
  /// Throws InadmissibleSpeed outside the closed fourth quadrant or at v = 0.
  ComplexSpeed(double re, double im_neg);

  /// From a complex v; same admissibility rules.
  static ComplexSpeed from_complex(cd v);

  double re() const { return re_; }
  double im_neg() const { return im_neg_; }
  cd value() const { return value_; }

 private:
  double re_;
  double im_neg_;
  cd value_;
};

struct AttenuationExponent {
  cd p;
  int mode_index = 0;

  double alpha() const { return p.real(); }
  double beta_im() const { return p.imag(); }
};

/// Relative residuals of t(alpha^2 - beta^2 + 1) = vR^2 - vI^2 and
/// t alpha beta = -vR vI, both scaled by t(alpha^2 + beta^2 + 1).
struct BranchResiduals {
  double real_part = 0.0;
  double imag_part = 0.0;
};

/// p with p^2 + 1 = v^2 / t and Im p > 0. Throws NonDecaying when neither
/// square root has a positive imaginary part (real v with v >= sqrt(t)).
AttenuationExponent p_from_t(const ComplexSpeed& v, double t, int mode_index = 0);

BranchResiduals branch_residuals(const ComplexSpeed& v, double t, cd p);

/// D_p = p^2 Q1 + p Q2 + R for the plane-wave system. Takes the raw complex v
/// so callers can also probe off the admissible quadrant.
Matrix5 assemble_Dp(const MaterialCoefficients& mat, cd v, cd p);

enum class Polarization { transverse, longitudinal };

struct ModeBasis {
  ModeRoot mode;
  AttenuationExponent p;
  Vector5 u_tilde;  ///< (U1, U2, A1, A2, B)
  std::map<std::string, cd> aux;
  Polarization polarization = Polarization::transverse;
};

/// Closed-form kernel vector of D_{p_k} for a general-coupling material.
/// Throws UnsupportedCoupling when m, beta or eps2 vanish, NonDecaying from
/// p_from_t, and DegenerateKernel when the numeric kernel of D_{p_k} is not
/// one-dimensional or does not contain the closed-form vector.
ModeBasis mode_vector(const MaterialCoefficients& mat, const ComplexSpeed& v, const ModeRoot& root);

/// Checks a candidate vector against the numeric kernel of D_{p_k}; throws
/// DegenerateKernel on failure. Shared with the decoupled-case builders.
void verify_kernel(const Matrix5& d, const Vector5& u, int mode_index);

inline constexpr double kKernelResidualTol = 1e-10;
inline constexpr double kKernelAngleTol = 1e-8;

enum class PolarizationClass { orthogonal, parallel };

/// Classifies (U1, U2) and (A1, A2) against n = (1, p_k) with the unconjugated
/// product. Throws Unclassified if neither structure holds.
PolarizationClass polarization_check(const ModeBasis& mb, double rel_tol = 1e-10);

}  // namespace rayleigh
