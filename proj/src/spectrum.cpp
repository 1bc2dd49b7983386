#include "rayleigh/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "rayleigh/error.hpp"

namespace rayleigh {

std::pair<double, double> roots_q2(const CubicCoefficients&, const MaterialCoefficients& m) {
  const double mub = m.mu * m.b;
  const double rd2 = m.rho * m.d2;
  const double disc = (mub - rd2) * (mub - rd2) + 4.0 * m.rho * m.b * m.eps2 * m.eps2;
  const double root = std::sqrt(disc);
  const double denom = 2.0 * m.rho * m.b;
  return {(mub + rd2 + root) / denom, (mub + rd2 - root) / denom};
}

std::array<double, 3> roots_q3(const CubicCoefficients& c) {
  if (!check_distinct_cubic_roots(c)) {
    throw SolverError(ErrorCode::IndistinctRoots, "q3 discriminant test h0^2 < (4/27) h1^3 fails");
  }
  double arg = (-3.0 * c.h0 / (2.0 * c.h1)) * std::sqrt(3.0 / c.h1);
  if (std::abs(arg) > 1.0 + kArccosBand) {
    throw SolverError(ErrorCode::DomainError, "arccos argument " + std::to_string(arg));
  }
  arg = std::clamp(arg, -1.0, 1.0);

  const double phase = std::acos(arg) / 3.0;
  const double amp = 2.0 * std::sqrt(c.h1 / 3.0);
  std::array<double, 3> t{};
  for (int k = 3; k <= 5; ++k) {
    t[k - 3] = c.b4 / 3.0 + amp * std::cos(phase - 2.0 * std::numbers::pi * (k + 1) / 3.0);
  }
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

RootSet mode_speeds(const MaterialCoefficients& mat) {
  const auto c = derived_cubic(mat);
  const auto q3 = roots_q3(c);
  const auto [t1, t2] = roots_q2(c, mat);

  RootSet set;
  set.roots = {ModeRoot{1, t1, RootSource::q2}, ModeRoot{2, t2, RootSource::q2},
               ModeRoot{3, q3[0], RootSource::q3}, ModeRoot{4, q3[1], RootSource::q3},
               ModeRoot{5, q3[2], RootSource::q3}};

  const double tol = kRootSeparation * c.b4;
  set.pairwise_min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const auto& ri = set.roots[i];
      const auto& rj = set.roots[j];
      const double gap = std::abs(ri.t - rj.t);
      set.pairwise_min_gap = std::min(set.pairwise_min_gap, gap);
      if (gap > tol) continue;
      if (ri.source != rj.source) {
        throw SolverError(ErrorCode::CommonRoot,
                          "t" + std::to_string(ri.index) + " = t" + std::to_string(rj.index) + " = " +
                              std::to_string(ri.t));
      }
      throw SolverError(ErrorCode::IndistinctRoots,
                        "t" + std::to_string(ri.index) + " and t" + std::to_string(rj.index) + " coincide");
    }
  }
  for (const auto& r : set.roots) {
    if (!(r.t > 0.0)) throw SolverError(ErrorCode::DomainError, "non-positive mode root");
  }
  return set;
}

PolynomialValues polynomial_residual(const CubicCoefficients& c, double t) {
  return {(t - c.a2) * t + c.a0, ((t - c.b4) * t + c.b2) * t - c.b0};
}

}  // namespace rayleigh
