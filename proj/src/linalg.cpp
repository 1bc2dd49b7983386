#include "rayleigh/linalg.hpp"

#include <cmath>
#include <utility>

namespace rayleigh {

cd determinant(const Matrix5& a) {
  Matrix5 lu = a;
  cd det = 1.0;
  for (int col = 0; col < 5; ++col) {
    int pivot = col;
    double best = std::abs(lu(col, col));
    for (int row = col + 1; row < 5; ++row) {
      const double mag = std::abs(lu(row, col));
      if (mag > best) {
        best = mag;
        pivot = row;
      }
    }
    if (best == 0.0) return cd(0.0, 0.0);
    if (pivot != col) {
      lu.row(pivot).swap(lu.row(col));
      det = -det;
    }
    const cd p = lu(col, col);
    det *= p;
    for (int row = col + 1; row < 5; ++row) {
      const cd factor = lu(row, col) / p;
      for (int j = col + 1; j < 5; ++j) lu(row, j) -= factor * lu(col, j);
    }
  }
  return det;
}

std::vector<Vector5> numeric_nullspace(const Matrix5& d, double rel_tol) {
  Eigen::JacobiSVD<Matrix5> svd(d, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();  // descending
  const double cutoff = rel_tol * s(0);
  std::vector<Vector5> basis;
  for (int i = 0; i < 5; ++i) {
    if (s(i) <= cutoff) basis.emplace_back(svd.matrixV().col(i));
  }
  return basis;
}

double angle_sine(const Vector5& x, const Vector5& y) {
  const double ny = y.norm();
  const double nx = x.norm();
  if (nx == 0.0 || ny == 0.0) return 1.0;
  // Residual of x after projecting onto y; avoids the 1 - cos^2 cancellation.
  const cd coeff = y.dot(x) / (ny * ny);
  return (x - coeff * y).norm() / nx;
}

}  // namespace rayleigh
