#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rayleigh/linalg.hpp"
#include "rayleigh/material.hpp"
#include "rayleigh/modes.hpp"

namespace rayleigh::testing {

/// Reference material used throughout the tests.
MaterialCoefficients m0();

/// Decoupled representatives (also shipped under materials/).
MaterialCoefficients case_i_material();
MaterialCoefficients case_ii_material();
MaterialCoefficients case_iii_material();

/// Small deterministic generator; doubles come from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(eng_() >> 11) * 0x1.0p-53); }
  double sign() { return (eng_() >> 63) ? 1.0 : -1.0; }
  int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 eng_;
};

/// Strongly elliptic material with all couplings active (m, beta, eps2 away
/// from zero), three distinct q3 roots and no q2/q3 overlap.
MaterialCoefficients random_material(Rng& rng);

/// Admissible speed v = re - im_neg i with im_neg > 0, so no mode is
/// non-decaying.
ComplexSpeed random_speed(Rng& rng, const MaterialCoefficients& mat);

/// Laplace expansion along the first row; exponential but exact in structure.
cd cofactor_det(const Matrix5& a);

/// Unit vector spanning the kernel direction of a numerically singular d, by
/// inverse iteration on its LU factors.
Vector5 inverse_iteration_kernel(const Matrix5& d);

/// Roots of t^3 - b4 t^2 + b2 t - b0, descending, by bracketing between the
/// critical points and bisection followed by Newton polishing.
std::array<double, 3> iterative_cubic_roots(double b4, double b2, double b0);

/// |det m| divided by the product of its row norms (Hadamard's bound), in [0, 1].
double hadamard_ratio(const Matrix5& m);

/// Writes `text` to a fresh file under the system temp dir and returns its path.
std::string temp_file(const std::string& stem, const std::string& text);

}  // namespace rayleigh::testing
