#include "rayleigh/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "rayleigh/error.hpp"

namespace rayleigh {

void ScanWindow::validate() const {
  auto bad = [](const std::string& why) { throw SolverError(ErrorCode::InvalidWindow, why); };
  if (!(re_min < re_max)) bad("re_min must be < re_max");
  if (!(im_min < im_max)) bad("im_min must be < im_max");
  if (nx < 2 || ny < 2) bad("nx and ny must be >= 2");
  if (re_max < 0.0 || im_min > 0.0) bad("window misses the quadrant Re v >= 0, Im v <= 0");
}

double ScanWindow::re_at(int i) const {
  if (i == nx - 1) return re_max;
  return re_min + (re_max - re_min) * (static_cast<double>(i) / (nx - 1));
}

double ScanWindow::im_at(int j) const {
  if (j == ny - 1) return im_max;
  return im_min + (im_max - im_min) * (static_cast<double>(j) / (ny - 1));
}

double ScanGrid::median_det() const {
  std::vector<double> dets;
  dets.reserve(values.size());
  for (double f : values) {
    if (std::isnan(f)) continue;
    dets.push_back(f == kZeroDetF ? 0.0 : std::exp(f));
  }
  if (dets.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(dets.begin(), dets.end());
  const std::size_t n = dets.size();
  return n % 2 == 1 ? dets[n / 2] : 0.5 * (dets[n / 2 - 1] + dets[n / 2]);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RAYLEIGH_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

double evaluate_or_nan(const MaterialCoefficients& mat, double re, double im) {
  try {
    // v = re + im i, so the damping rate is -im.
    return objective_F(mat, re, -im);
  } catch (const ModeFailure&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

ScanGrid grid_scan(const MaterialCoefficients& mat, const ScanWindow& w, unsigned threads) {
  w.validate();
  ScanGrid grid;
  grid.window = w;
  const std::size_t total = static_cast<std::size_t>(w.nx) * w.ny;
  grid.values.assign(total, std::numeric_limits<double>::quiet_NaN());

  // Each worker claims indices and writes only its own slots.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const int i = static_cast<int>(idx % w.nx);
      const int j = static_cast<int>(idx / w.nx);
      grid.values[idx] = evaluate_or_nan(mat, w.re_at(i), w.im_at(j));
    }
  };

  const unsigned n = std::min<std::size_t>(resolve_threads(threads), total);
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  grid.failures = static_cast<std::size_t>(std::count_if(grid.values.begin(), grid.values.end(),
                                                         [](double f) { return std::isnan(f); }));
  if (grid.failures == total) throw SolverError(ErrorCode::AllPointsFailed, "no lattice point could be evaluated");
  return grid;
}

namespace {

struct Vertex {
  double x = 0.0;  // vR
  double y = 0.0;  // vI
  double f = 0.0;
};

class ClampedObjective {
 public:
  ClampedObjective(const MaterialCoefficients& mat, int budget) : mat_(mat), budget_(budget) {}

  bool exhausted() const { return evals_ >= budget_; }
  int evals() const { return evals_; }

  Vertex operator()(double x, double y) {
    Vertex v{std::max(x, 0.0), std::max(y, 0.0), std::numeric_limits<double>::infinity()};
    ++evals_;
    try {
      v.f = objective_F(mat_, v.x, v.y);
    } catch (const ModeFailure&) {
    }
    return v;
  }

 private:
  const MaterialCoefficients& mat_;
  int budget_;
  int evals_ = 0;
};

double diameter(const std::array<Vertex, 3>& s) {
  double d = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) d = std::max(d, std::hypot(s[a].x - s[b].x, s[a].y - s[b].y));
  }
  return d;
}

}  // namespace

RayleighRoot refine_minimum(const MaterialCoefficients& mat, const ComplexSpeed& v0, const SearchOptions& opts) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  ClampedObjective F(mat, opts.max_evals);
  std::array<Vertex, 3> s = {F(v0.re(), v0.im_neg()), F(v0.re() + opts.step_re, v0.im_neg()),
                             F(v0.re(), v0.im_neg() + opts.step_im)};
  if (std::all_of(s.begin(), s.end(), [](const Vertex& v) { return std::isinf(v.f) && v.f > 0; })) {
    throw SolverError(ErrorCode::StartFailure, "objective undefined on the starting simplex");
  }

  int iterations = 0;
  auto order = [&] {
    std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  order();

  while (!F.exhausted() && diameter(s) > opts.simplex_tol) {
    ++iterations;
    const double cx = 0.5 * (s[0].x + s[1].x);
    const double cy = 0.5 * (s[0].y + s[1].y);
    const Vertex& worst = s[2];

    const Vertex r = F(cx + kReflect * (cx - worst.x), cy + kReflect * (cy - worst.y));
    if (r.f < s[0].f) {
      if (F.exhausted()) {
        s[2] = r;
      } else {
        const Vertex e = F(cx + kExpand * (r.x - cx), cy + kExpand * (r.y - cy));
        s[2] = e.f < r.f ? e : r;
      }
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      bool shrink = false;
      if (F.exhausted()) {
        if (r.f < worst.f) s[2] = r;
        break;
      }
      if (r.f < worst.f) {
        const Vertex c = F(cx + kContract * (r.x - cx), cy + kContract * (r.y - cy));
        if (c.f <= r.f) s[2] = c; else shrink = true;
      } else {
        const Vertex c = F(cx + kContract * (worst.x - cx), cy + kContract * (worst.y - cy));
        if (c.f < worst.f) s[2] = c; else shrink = true;
      }
      if (shrink) {
        for (int k = 1; k < 3 && !F.exhausted(); ++k) {
          s[k] = F(s[0].x + kShrink * (s[k].x - s[0].x), s[0].y + kShrink * (s[k].y - s[0].y));
        }
      }
    }
    order();
  }

  const Vertex& best = s[0];
  RayleighRoot root;
  root.v = ComplexSpeed(best.x, best.y);
  root.f_value = best.f;
  root.det_abs = best.f == kZeroDetF ? 0.0 : std::exp(best.f);
  root.iterations = iterations;
  root.evaluations = F.evals();
  root.classification = root.det_abs <= opts.tol_det * opts.reference_det ? RootClass::converged : RootClass::stagnated;
  try {
    root.gamma = amplitudes(mat, root.v, opts.root_ratio);
  } catch (const SolverError&) {
    root.gamma.reset();
  }
  return root;
}

std::vector<std::pair<int, int>> grid_local_minima(const ScanGrid& grid) {
  const auto& w = grid.window;
  std::vector<std::pair<int, int>> seeds;
  for (int j = 1; j + 1 < w.ny; ++j) {
    for (int i = 1; i + 1 < w.nx; ++i) {
      const double f = grid.at(i, j);
      if (std::isnan(f)) continue;
      bool strict = true;
      int finite = 0;
      for (int dj = -1; dj <= 1 && strict; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const double g = grid.at(i + di, j + dj);
          if (std::isnan(g)) continue;
          ++finite;
          if (!(f < g)) {
            strict = false;
            break;
          }
        }
      }
      if (strict && finite > 0) seeds.emplace_back(i, j);
    }
  }
  return seeds;
}

std::vector<RayleighRoot> find_rayleigh_on_grid(const MaterialCoefficients& mat, const ScanGrid& grid,
                                                const SearchOptions& opts) {
  const auto& w = grid.window;
  SearchOptions local = opts;
  local.reference_det = grid.median_det();
  local.step_re = 0.25 * w.re_step();
  local.step_im = 0.25 * w.im_step();

  std::vector<RayleighRoot> refined;
  for (const auto& [i, j] : grid_local_minima(grid)) {
    const double re = w.re_at(i), im = w.im_at(j);
    if (re < 0.0 || im > 0.0) continue;
    try {
      refined.push_back(refine_minimum(mat, ComplexSpeed(re, -im), local));
    } catch (const SolverError&) {
      // StartFailure or an inadmissible seed: nothing to refine here.
    }
  }

  std::stable_sort(refined.begin(), refined.end(), [](const RayleighRoot& a, const RayleighRoot& b) {
    if (a.f_value != b.f_value) return a.f_value < b.f_value;
    if (a.v.re() != b.v.re()) return a.v.re() < b.v.re();
    return a.v.im_neg() < b.v.im_neg();
  });

  std::vector<RayleighRoot> unique;
  for (auto& r : refined) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const RayleighRoot& u) {
      return std::abs(u.v.value() - r.v.value()) <= opts.dedup_tol;
    });
    if (!dup) unique.push_back(std::move(r));
  }
  return unique;
}

std::vector<RayleighRoot> find_rayleigh(const MaterialCoefficients& mat, const ScanWindow& w,
                                        const SearchOptions& opts) {
  return find_rayleigh_on_grid(mat, grid_scan(mat, w, opts.threads), opts);
}

}  // namespace rayleigh
