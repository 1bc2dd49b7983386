#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace rayleigh {

using cd = std::complex<double>;

/// Rows/columns are ordered (u1, u2, tau1, tau2, chi) for propagation
/// matrices and (t21, t22, L21, L22, S2) for traction rows.
using Matrix5 = Eigen::Matrix<cd, 5, 5>;
using Vector5 = Eigen::Matrix<cd, 5, 1>;

/// LU elimination with partial pivoting on |a_ij|. Ties go to the lowest row
/// index so the result is reproducible bit for bit. Returns exactly zero when
/// a pivot column is entirely zero.
cd determinant(const Matrix5& a);

/// Orthonormal basis of the right singular directions whose singular value is
/// at most rel_tol times the largest one.
std::vector<Vector5> numeric_nullspace(const Matrix5& d, double rel_tol = 1e-10);

/// Sine of the angle between two complex vectors (phase-insensitive).
double angle_sine(const Vector5& x, const Vector5& y);

}  // namespace rayleigh
