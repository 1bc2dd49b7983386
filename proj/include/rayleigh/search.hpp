#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rayleigh/material.hpp"
#include "rayleigh/modes.hpp"
#include "rayleigh/secular.hpp"

namespace rayleigh {

/// Rectangle in the (Re v, Im v) plane sampled with inclusive endpoints.
/// Im coordinates are those of v itself, so the Rayleigh quadrant is im <= 0.
struct ScanWindow {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
  int nx = 2;
  int ny = 2;

  /// Throws InvalidWindow.
  void validate() const;
  double re_at(int i) const;
  double im_at(int j) const;
  double re_step() const { return (re_max - re_min) / (nx - 1); }
  double im_step() const { return (im_max - im_min) / (ny - 1); }
};

/// F samples stored row-major: values[j * nx + i] is at (re_at(i), im_at(j)).
/// Failed points hold NaN.
struct ScanGrid {
  ScanWindow window;
  std::vector<double> values;
  std::size_t failures = 0;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * window.nx + i]; }
  /// Median of |det A| = exp(F) over the successful points.
  double median_det() const;
};

/// Worker count for scans: `requested` if positive, else RAYLEIGH_THREADS if
/// set and positive, else the hardware concurrency.
unsigned resolve_threads(unsigned requested = 0);

/// Throws AllPointsFailed when no lattice point can be evaluated. The result is
/// independent of the thread count.
ScanGrid grid_scan(const MaterialCoefficients& mat, const ScanWindow& w, unsigned threads = 0);

enum class RootClass { converged, stagnated };

struct SearchOptions {
  double tol_det = 1e-6;        ///< converged iff |det| <= tol_det * reference_det
  double reference_det = 1.0;   ///< grid median |det| when driven by find_rayleigh
  double dedup_tol = 1e-6;
  double simplex_tol = 1e-10;
  int max_evals = 500;
  double step_re = 1e-3;        ///< initial simplex edges
  double step_im = 1e-3;
  double root_ratio = kRootSingularRatio;
  unsigned threads = 0;
};

struct RayleighRoot {
  ComplexSpeed v{1.0, 0.0};
  double f_value = 0.0;
  double det_abs = 0.0;
  std::optional<AmplitudeVector> gamma;  ///< set when the singular-value test passes
  int iterations = 0;
  int evaluations = 0;
  RootClass classification = RootClass::stagnated;
};

/// Nelder-Mead descent on F over (vR, vI), every trial point clamped to the
/// closed quadrant. Throws StartFailure if F is undefined at the whole
/// starting simplex.
RayleighRoot refine_minimum(const MaterialCoefficients& mat, const ComplexSpeed& v0, const SearchOptions& opts);

/// Interior grid points strictly below every finite 8-neighbour.
std::vector<std::pair<int, int>> grid_local_minima(const ScanGrid& grid);

/// Scan, seed from local minima, refine, deduplicate; sorted by f ascending.
std::vector<RayleighRoot> find_rayleigh(const MaterialCoefficients& mat, const ScanWindow& w,
                                        const SearchOptions& opts = {});
std::vector<RayleighRoot> find_rayleigh_on_grid(const MaterialCoefficients& mat, const ScanGrid& grid,
                                                const SearchOptions& opts = {});

}  // namespace rayleigh
