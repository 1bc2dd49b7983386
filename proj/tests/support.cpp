#include "support.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include <Eigen/LU>

#include "rayleigh/error.hpp"
#include "rayleigh/spectrum.hpp"

namespace rayleigh::testing {

MaterialCoefficients m0() { return {1, 1, 1, 1, 1, 1, 1, 1, 2, 0.5, 0.5, 0.5, 0.5}; }

MaterialCoefficients case_i_material() { return {1, 1, 1, 1, 1, 1, 1, 2, 1, 0, 0, 0, 0.5}; }

MaterialCoefficients case_ii_material() { return {1, 1, 1, 1, 1, 1, 1, 2, 1, 0, 0, 0.5, 0}; }

MaterialCoefficients case_iii_material() { return {1, 1, 1, 1, 1, 1, 1, 1, 2, 0.5, 0.5, 0, 0}; }

MaterialCoefficients random_material(Rng& rng) {
  for (;;) {
    MaterialCoefficients m;
    m.rho = rng.uniform(0.5, 3.0);
    m.a = rng.uniform(0.5, 3.0);
    m.b = rng.uniform(0.5, 3.0);
    m.k = rng.uniform(0.5, 3.0);
    m.mu = rng.uniform(0.5, 3.0);
    m.lambda = rng.uniform(-0.6 * m.mu, 3.0);
    m.d1 = rng.uniform(-0.5, 2.0);
    m.d2 = rng.uniform(0.5, 3.0);
    m.d3 = rng.uniform(-0.5, 2.0);
    if (m.d() <= 0.2) continue;
    // Place the couplings strictly inside the ellipticity cones.
    m.eps2 = rng.sign() * rng.uniform(0.1, 0.9) * std::sqrt(m.mu * m.d2);
    const double e = rng.sign() * rng.uniform(0.1, 0.9) * std::sqrt(m.p_modulus() * m.d());
    m.eps1 = e - 2.0 * m.eps2;
    m.beta = rng.sign() * rng.uniform(0.1, 2.0);
    m.m = rng.sign() * rng.uniform(0.1, 2.0);
    try {
      (void)mode_speeds(m);
    } catch (const SolverError&) {
      continue;
    }
    return m;
  }
}

ComplexSpeed random_speed(Rng& rng, const MaterialCoefficients& mat) {
  const auto roots = mode_speeds(mat).roots;
  double tmax = 0.0;
  for (const auto& r : roots) tmax = std::max(tmax, r.t);
  const double c = std::sqrt(tmax);
  return ComplexSpeed(rng.uniform(0.02, 1.2) * c, rng.uniform(0.005, 0.5) * c);
}

namespace {

cd cofactor(const std::vector<std::vector<cd>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  cd sum = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<cd>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<cd> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(a[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const double sgn = col % 2 == 0 ? 1.0 : -1.0;
    sum += sgn * a[0][col] * cofactor(minor);
  }
  return sum;
}

}  // namespace

cd cofactor_det(const Matrix5& a) {
  std::vector<std::vector<cd>> rows(5, std::vector<cd>(5));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) rows[i][j] = a(i, j);
  }
  return cofactor(rows);
}

Vector5 inverse_iteration_kernel(const Matrix5& d) {
  // The kernel is the eigenvector for eigenvalue 0; a tiny shift avoids exact
  // zero pivots in block-structured matrices and still isolates it.
  const Matrix5 shifted = d + cd(1e-13 * d.norm()) * Matrix5::Identity();
  const Eigen::PartialPivLU<Matrix5> lu(shifted);
  Vector5 x = Vector5::Constant(cd(1.0, 0.5));
  for (int it = 0; it < 4; ++it) x = lu.solve(x).normalized();
  return x;
}

std::array<double, 3> iterative_cubic_roots(double b4, double b2, double b0) {
  auto q = [&](double t) { return ((t - b4) * t + b2) * t - b0; };
  auto dq = [&](double t) { return (3.0 * t - 2.0 * b4) * t + b2; };

  // Critical points of q split the real line into three monotone pieces.
  const double disc = std::sqrt(std::max(0.0, b4 * b4 - 3.0 * b2));
  const double c1 = (b4 - disc) / 3.0;
  const double c2 = (b4 + disc) / 3.0;
  const double span = std::abs(b4) + std::abs(b2) + std::abs(b0) + 1.0;

  auto solve = [&](double lo, double hi) {
    double flo = q(lo);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = q(mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
      const double g = dq(t);
      if (g == 0.0) break;
      t -= q(t) / g;
    }
    return t;
  };
  return {solve(c2, span), solve(c1, c2), solve(-span, c1)};
}

double hadamard_ratio(const Matrix5& m) {
  double bound = 1.0;
  for (int i = 0; i < 5; ++i) bound *= m.row(i).norm();
  return std::abs(cofactor_det(m)) / bound;
}

std::string temp_file(const std::string& stem, const std::string& text) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() / "rayleigh_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / (stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace rayleigh::testing
