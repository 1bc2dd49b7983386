#pragma once

#include <array>
#include <utility>

#include "rayleigh/material.hpp"

namespace rayleigh {

enum class RootSource { q2, q3 };

/// One of the five squared mode speeds; indices 1-2 are the q2 roots
/// (transverse) and 3-5 the q3 roots (longitudinal).
struct ModeRoot {
  int index = 0;
  double t = 0.0;
  RootSource source = RootSource::q2;
};

struct RootSet {
  std::array<ModeRoot, 5> roots;
  double pairwise_min_gap = 0.0;
};

/// Roots of q2 as (t1, t2) with t1 >= t2.
std::pair<double, double> roots_q2(const CubicCoefficients& c, const MaterialCoefficients& mat);

/// Roots of q3 from the trigonometric form, returned descending. Throws
/// IndistinctRoots if the discriminant test fails and DomainError if the
/// arccos argument leaves [-1, 1] by more than kArccosBand.
std::array<double, 3> roots_q3(const CubicCoefficients& c);

inline constexpr double kArccosBand = 1e-12;
inline constexpr double kRootSeparation = 1e-9;  // relative to b4

/// All five roots. Throws NotStronglyElliptic, IndistinctRoots or CommonRoot.
RootSet mode_speeds(const MaterialCoefficients& mat);

struct PolynomialValues {
  double q2 = 0.0;
  double q3 = 0.0;
};

PolynomialValues polynomial_residual(const CubicCoefficients& c, double t);

}  // namespace rayleigh
