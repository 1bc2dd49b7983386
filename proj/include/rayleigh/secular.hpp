#pragma once

#include <array>
#include <limits>

#include "rayleigh/linalg.hpp"
#include "rayleigh/material.hpp"
#include "rayleigh/modes.hpp"

namespace rayleigh {

/// Traction operator on x2 = const planes: T2 = i kappa S_p U for a single
/// exponential mode. Rows are (t21, t22, L21, L22, S2).
Matrix5 assemble_Sp(const MaterialCoefficients& mat, cd v, cd p);

struct SecularMatrix {
  Matrix5 A;                       ///< column k = S_{p_k} U_k
  std::array<ModeBasis, 5> modes;  ///< ordered by mode index
};

/// Builds the boundary matrix for a general-coupling material. Propagates
/// CommonRoot, IndistinctRoots, NonDecaying, DegenerateKernel, ...
SecularMatrix secular_matrix(const MaterialCoefficients& mat, const ComplexSpeed& v);

/// Assembles the boundary matrix from arbitrary mode bases (used by the
/// decoupled-case route).
SecularMatrix secular_matrix_from_modes(const MaterialCoefficients& mat, const ComplexSpeed& v,
                                        const std::array<ModeBasis, 5>& modes);

cd secular_det(const MaterialCoefficients& mat, const ComplexSpeed& v);

/// Value of F when det A is exactly zero; keeps F totally ordered.
inline constexpr double kZeroDetF = std::numeric_limits<double>::lowest();

/// F = ln|det A| at v = vR - vI i. Any upstream failure, including an
/// inadmissible (vR, vI), is rethrown as ModeFailure.
double objective_F(const MaterialCoefficients& mat, double vR, double vI);

inline constexpr double kRootSingularRatio = 1e-6;

struct AmplitudeVector {
  Vector5 gamma;  ///< largest component scaled to exactly 1
};

/// Kernel direction of A from its smallest singular value. Throws NotARoot
/// when sigma_min > ratio * sigma_max.
AmplitudeVector amplitudes(const MaterialCoefficients& mat, const ComplexSpeed& v,
                           double ratio = kRootSingularRatio);
AmplitudeVector amplitudes_of(const Matrix5& A, double ratio = kRootSingularRatio);

struct FieldState {
  cd u1, u2, tau1, tau2, chi;
  Vector5 traction;              ///< (t21, t22, L21, L22, S2)
  double traction_scale = 0.0;   ///< sum of |term| over the five modes
};

/// Displacement, microtemperature, thermal displacement and x2-traction of the
/// superposed surface wave. Requires x2 >= 0 and kappa > 0.
FieldState field_eval(const MaterialCoefficients& mat, const ComplexSpeed& v, const AmplitudeVector& gamma,
                      double kappa, double x1, double x2, double t);

}  // namespace rayleigh
