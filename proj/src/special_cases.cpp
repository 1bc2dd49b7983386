#include "rayleigh/special_cases.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "rayleigh/error.hpp"
#include "rayleigh/spectrum.hpp"

namespace rayleigh {

namespace {

bool is_decoupled(CouplingTag tag) {
  return tag == CouplingTag::case_i || tag == CouplingTag::case_ii || tag == CouplingTag::case_iii;
}

void require_case(const MaterialCoefficients& mat, CouplingTag tag) {
  if (!is_decoupled(tag)) {
    throw SolverError(ErrorCode::WrongCase, std::string(coupling_tag_name(tag)) + " is not a decoupled case");
  }
  const auto actual = classify_coupling(mat).tag;
  if (actual != tag) {
    throw SolverError(ErrorCode::WrongCase, "material is " + std::string(coupling_tag_name(actual)) + ", not " +
                                                std::string(coupling_tag_name(tag)));
  }
}

// (s +- sqrt(disc)) / denom
std::pair<double, double> radical_pair(double s, double disc, double denom) {
  const double r = std::sqrt(disc);
  return {(s + r) / denom, (s - r) / denom};
}

// Closed forms without any guards; shared by roots_case and the limit study.
CaseRootSet case_root_values(const MaterialCoefficients& m, CouplingTag tag) {
  const double d = m.d();
  const double pm = m.p_modulus();
  const double a = m.a, b = m.b, k = m.k, rho = m.rho;

  CaseRootSet set;
  set.tag = tag;
  std::array<double, 5> t{};
  switch (tag) {
    case CouplingTag::case_i: {
      const double m2 = m.m * m.m;
      const auto [t4, t5] = radical_pair(m2 + a * d + b * k,
                                         m2 * m2 + (a * d - b * k) * (a * d - b * k) + 2.0 * m2 * (a * d + b * k),
                                         2.0 * a * b);
      t = {m.mu / rho, m.d2 / b, pm / rho, t4, t5};
      set.labels = {"mu/rho", "d2/b", "(lambda+2mu)/rho", "m-radical(+)", "m-radical(-)"};
      break;
    }
    case CouplingTag::case_ii: {
      const double be2 = m.beta * m.beta;
      const double apm = a * pm;
      const auto [t4, t5] = radical_pair(apm + be2 + k * rho,
                                         be2 * be2 + (apm - rho * k) * (apm - rho * k) + 2.0 * be2 * (apm + rho * k),
                                         2.0 * a * rho);
      t = {m.mu / rho, m.d2 / b, d / b, t4, t5};
      set.labels = {"mu/rho", "d2/b", "d/b", "beta-radical(+)", "beta-radical(-)"};
      break;
    }
    case CouplingTag::case_iii: {
      const auto [t1, t2] = roots_q2(CubicCoefficients{}, m);
      const double es = m.eps_sum();
      const auto [t4, t5] = radical_pair(b * pm + d * rho,
                                         (b * pm - rho * d) * (b * pm - rho * d) + 4.0 * rho * b * es * es,
                                         2.0 * rho * b);
      t = {t1, t2, k / a, t4, t5};
      set.labels = {"q2(+)", "q2(-)", "k/a", "eps-radical(+)", "eps-radical(-)"};
      break;
    }
    default:
      throw SolverError(ErrorCode::WrongCase, std::string(coupling_tag_name(tag)));
  }
  for (int i = 0; i < 5; ++i) set.roots[i] = ModeRoot{i + 1, t[i], i < 2 ? RootSource::q2 : RootSource::q3};
  return set;
}

}  // namespace

CaseRootSet roots_case(const MaterialCoefficients& mat, CouplingTag tag) {
  require_case(mat, tag);
  derived_cubic(mat);  // ellipticity guard

  CaseRootSet set = case_root_values(mat, tag);
  double scale = 0.0;
  for (const auto& r : set.roots) {
    if (!(r.t > 0.0)) throw SolverError(ErrorCode::DomainError, "non-positive case root");
    scale = std::max(scale, r.t);
  }
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      if (std::abs(set.roots[i].t - set.roots[j].t) <= kRootSeparation * scale) {
        throw SolverError(ErrorCode::DegenerateRoots, "t" + std::to_string(i + 1) + " = t" + std::to_string(j + 1) +
                                                          " = " + std::to_string(set.roots[i].t));
      }
    }
  }
  return set;
}

std::array<ModeBasis, 5> mode_vectors_case(const MaterialCoefficients& m, const ComplexSpeed& v, CouplingTag tag) {
  const CaseRootSet roots = roots_case(m, tag);
  const cd vv = v.value();

  std::array<ModeBasis, 5> out;
  for (int k = 0; k < 5; ++k) {
    ModeBasis& mb = out[k];
    mb.mode = roots.roots[k];
    mb.p = p_from_t(v, mb.mode.t, k + 1);
  }
  auto p = [&](int k) { return out[k - 1].p.p; };
  auto t = [&](int k) { return out[k - 1].mode.t; };
  auto set = [&](int k, Vector5 u, Polarization pol) {
    out[k - 1].u_tilde = u;
    out[k - 1].polarization = pol;
  };
  const auto T = Polarization::transverse;
  const auto L = Polarization::longitudinal;

  switch (tag) {
    case CouplingTag::case_i: {
      set(1, (Vector5() << -p(1), 1.0, 0.0, 0.0, 0.0).finished(), T);
      set(2, (Vector5() << 0.0, 0.0, -p(2), 1.0, 0.0).finished(), T);
      set(3, (Vector5() << 1.0, p(3), 0.0, 0.0, 0.0).finished(), L);
      for (int k : {4, 5}) {
        const double pi = m.m * m.m * t(k) + (m.a * t(k) - m.k) * (m.d1 + m.d3);
        set(k, (Vector5() << 0.0, 0.0, pi, p(k) * pi, m.m * vv * (m.b * t(k) - m.d2)).finished(), L);
        out[k - 1].aux["Pi"] = pi;
      }
      break;
    }
    case CouplingTag::case_ii: {
      set(1, (Vector5() << -p(1), 1.0, 0.0, 0.0, 0.0).finished(), T);
      set(2, (Vector5() << 0.0, 0.0, -p(2), 1.0, 0.0).finished(), T);
      set(3, (Vector5() << 0.0, 0.0, 1.0, p(3), 0.0).finished(), L);
      for (int k : {4, 5}) {
        const double om = m.beta * m.beta * t(k) + (m.a * t(k) - m.k) * (m.lambda + m.mu);
        set(k, (Vector5() << om, p(k) * om, 0.0, 0.0, m.beta * vv * (m.rho * t(k) - m.mu)).finished(), L);
        out[k - 1].aux["Omega"] = om;
      }
      break;
    }
    case CouplingTag::case_iii: {
      // Modes 1-2 (q2 roots) are transverse, 3 is the pure thermal mode and
      // 4-5 are longitudinal; every vector uses the p of its own root.
      const double es = m.eps_sum();
      for (int k : {1, 2}) {
        const double psi_hat = m.rho * t(k) - m.mu;
        set(k, (Vector5() << -m.eps2 * p(k), m.eps2, -p(k) * psi_hat, psi_hat, 0.0).finished(), T);
        out[k - 1].aux["Psi_hat"] = psi_hat;
      }
      set(3, (Vector5() << 0.0, 0.0, 0.0, 0.0, m.eps2).finished(), L);
      for (int k : {4, 5}) {
        const double psi = m.rho * t(k) - m.p_modulus();
        set(k, (Vector5() << es, es * p(k), psi, p(k) * psi, 0.0).finished(), L);
        out[k - 1].aux["Psi"] = psi;
      }
      break;
    }
    default:
      throw SolverError(ErrorCode::WrongCase, std::string(coupling_tag_name(tag)));
  }

  for (const auto& mb : out) verify_kernel(assemble_Dp(m, vv, mb.p.p), mb.u_tilde, mb.mode.index);
  return out;
}

cd secular_case_explicit(const MaterialCoefficients& m, cd v, CouplingTag tag, ExplicitForm form) {
  if (tag != CouplingTag::case_i && tag != CouplingTag::case_ii) {
    throw SolverError(ErrorCode::WrongCase, "explicit secular expressions exist for case_i and case_ii only");
  }
  require_case(m, tag);
  if (v == cd(0.0, 0.0)) return cd(0.0, 0.0);

  const ComplexSpeed speed = ComplexSpeed::from_complex(v);
  const CaseRootSet roots = roots_case(m, tag);
  std::array<cd, 6> p{};
  for (int k = 1; k <= 5; ++k) p[k] = p_from_t(speed, roots.roots[k - 1].t, k).p;
  const double t5 = roots.roots[4].t;

  const double rho = m.rho, mu = m.mu, a = m.a, b = m.b, k = m.k;
  const double d = m.d(), d23 = m.d2 + m.d3, pm = m.p_modulus();
  const cd v2 = v * v;
  const cd elastic = rho * v2 - 2.0 * mu;

  if (tag == CouplingTag::case_i) {
    cd p2 = p[2], p3 = p[3];
    if (form == ExplicitForm::corrected) std::swap(p2, p3);
    const double m2 = m.m * m.m;
    const cd x = b * v2 - d23;
    const cd rayleigh = 4.0 * mu * mu * p[1] * p2 + elastic * elastic;
    const cd inner = b * p[4] * x * ((k - a * t5) * x + m2 * v2) +
                     p[5] * (p3 * p[4] * d23 * d23 * (-2.0 * a * b * t5 + a * d + b * k) + a * (d - b * t5) * x * x +
                             m2 * d23 * ((p3 * p[4] + 1.0) * d23 - b * v2));
    return v * rayleigh * inner;
  }

  const double beta_coeff = form == ExplicitForm::corrected ? m.beta * m.beta : m.beta;
  const cd x = b * v2 - d23;
  const cd micro = x * x + p[2] * p[3] * d23 * d23;
  const cd inner = p[4] * rho * elastic * (beta_coeff * v2 - (k - a * t5) * (2.0 * mu - rho * v2)) +
                   p[5] * (4.0 * mu * mu * p[1] * p[4] * (a * (pm - 2.0 * rho * t5) + k * rho) +
                           a * elastic * elastic * (pm - rho * t5) +
                           2.0 * m.beta * m.beta * mu * (2.0 * mu + 2.0 * mu * p[1] * p[4] - rho * v2));
  return v * micro * inner;
}

cd secular_case_det(const MaterialCoefficients& m, const ComplexSpeed& v, CouplingTag tag) {
  return determinant(secular_matrix_from_modes(m, v, mode_vectors_case(m, v, tag)).A);
}

namespace {

double median_abs(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

enum class ZeroClass { zero, nonzero, ambiguous };

ZeroClass classify_magnitude(double x, double scale) {
  if (x <= kZeroClassTol * scale) return ZeroClass::zero;
  if (x >= kNonzeroClassTol * scale) return ZeroClass::nonzero;
  return ZeroClass::ambiguous;
}

}  // namespace

ZeroSetAgreement zero_set_agreement(const MaterialCoefficients& mat, CouplingTag tag, std::span<const cd> speeds,
                                    ExplicitForm form) {
  std::vector<double> ex, det;
  ex.reserve(speeds.size());
  det.reserve(speeds.size());
  for (const cd v : speeds) {
    ex.push_back(std::abs(secular_case_explicit(mat, v, tag, form)));
    det.push_back(std::abs(secular_case_det(mat, ComplexSpeed::from_complex(v), tag)));
  }

  ZeroSetAgreement out;
  out.samples = static_cast<int>(speeds.size());
  out.explicit_scale = median_abs(ex);
  out.det_scale = median_abs(det);
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    const auto ce = classify_magnitude(ex[i], out.explicit_scale);
    const auto cdet = classify_magnitude(det[i], out.det_scale);
    if (ce != ZeroClass::ambiguous && ce == cdet) {
      ++out.agree;
      if (ce == ZeroClass::zero) ++out.both_zero;
    }
  }
  return out;
}

std::vector<cd> sample_speeds(int n, std::uint64_t seed, double re_lo, double re_hi, double im_lo, double im_hi) {
  std::mt19937_64 rng(seed);
  // 53-bit mantissa mapping; std::uniform_real_distribution is not portable.
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<cd> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double re = re_lo + (re_hi - re_lo) * unit();
    const double im = im_lo + (im_hi - im_lo) * unit();
    out.emplace_back(re, im);
  }
  return out;
}

ReducedCubic reduced_q3(const MaterialCoefficients& m, CouplingTag tag) {
  if (!is_decoupled(tag)) throw SolverError(ErrorCode::WrongCase, std::string(coupling_tag_name(tag)));
  const double a = m.a, b = m.b, k = m.k, rho = m.rho, d = m.d(), pm = m.p_modulus();

  // q3 = (t - r)(t^2 - s t + q)
  double r = 0.0, s = 0.0, q = 0.0;
  switch (tag) {
    case CouplingTag::case_i:
      r = pm / rho;
      s = (m.m * m.m + a * d + b * k) / (a * b);
      q = k * d / (a * b);
      break;
    case CouplingTag::case_ii:
      // factor (b t - d)(...); divided through by b to make it monic
      r = d / b;
      s = (a * pm + m.beta * m.beta + k * rho) / (a * rho);
      q = pm * k / (a * rho);
      break;
    default: {
      const double es = m.eps_sum();
      r = k / a;
      s = (b * pm + d * rho) / (rho * b);
      q = (pm * d - es * es) / (rho * b);
      break;
    }
  }
  return {r + s, q + r * s, r * q};
}

MaterialCoefficients scale_vanishing_couplings(const MaterialCoefficients& mat, CouplingTag tag, double scale) {
  MaterialCoefficients out = mat;
  switch (tag) {
    case CouplingTag::case_i:
      out.beta *= scale;
      out.eps1 *= scale;
      out.eps2 *= scale;
      break;
    case CouplingTag::case_ii:
      out.m *= scale;
      out.eps1 *= scale;
      out.eps2 *= scale;
      break;
    case CouplingTag::case_iii:
      out.beta *= scale;
      out.m *= scale;
      break;
    default:
      throw SolverError(ErrorCode::WrongCase, std::string(coupling_tag_name(tag)));
  }
  return out;
}

LimitReport limit_consistency(const MaterialCoefficients& general, CouplingTag tag) {
  LimitReport report;
  report.tag = tag;
  report.scales = {1e-2, 1e-4, 1e-6};

  const CaseRootSet limit = case_root_values(scale_vanishing_couplings(general, tag, 0.0), tag);
  auto sorted_group = [](std::array<double, 5> t) {
    std::sort(t.begin(), t.begin() + 2, std::greater<>());
    std::sort(t.begin() + 2, t.end(), std::greater<>());
    return t;
  };
  std::array<double, 5> target{};
  for (int i = 0; i < 5; ++i) target[i] = limit.roots[i].t;
  target = sorted_group(target);

  for (double s : report.scales) {
    const MaterialCoefficients ms = scale_vanishing_couplings(general, tag, s);
    const CubicCoefficients c = derived_cubic(ms);
    const auto [t1, t2] = roots_q2(c, ms);
    const auto q3 = roots_q3(c);
    const auto got = sorted_group({t1, t2, q3[0], q3[1], q3[2]});
    double gap = 0.0;
    for (int i = 0; i < 5; ++i) gap = std::max(gap, std::abs(got[i] - target[i]));
    report.gaps.push_back(gap);
  }

  report.monotone = true;
  double slope_sum = 0.0;
  for (std::size_t i = 1; i < report.gaps.size(); ++i) {
    report.monotone = report.monotone && report.gaps[i] < report.gaps[i - 1];
    const double g0 = std::max(report.gaps[i - 1], 1e-300), g1 = std::max(report.gaps[i], 1e-300);
    slope_sum += std::log10(g1 / g0) / std::log10(report.scales[i] / report.scales[i - 1]);
  }
  report.rate = slope_sum / static_cast<double>(report.gaps.size() - 1);
  return report;
}

}  // namespace rayleigh
