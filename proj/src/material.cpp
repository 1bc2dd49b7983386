#include "rayleigh/material.hpp"

#include <cmath>

#include "rayleigh/error.hpp"

namespace rayleigh {

namespace {

template <class Record>
auto field(Record& m, std::string_view name) -> decltype(&m.rho) {
  if (name == "rho") return &m.rho;
  if (name == "a") return &m.a;
  if (name == "b") return &m.b;
  if (name == "k") return &m.k;
  if (name == "lambda") return &m.lambda;
  if (name == "mu") return &m.mu;
  if (name == "d1") return &m.d1;
  if (name == "d2") return &m.d2;
  if (name == "d3") return &m.d3;
  if (name == "eps1") return &m.eps1;
  if (name == "eps2") return &m.eps2;
  if (name == "beta") return &m.beta;
  if (name == "m") return &m.m;
  return nullptr;
}

}  // namespace

double coefficient(const MaterialCoefficients& mat, std::string_view name) {
  const double* p = field(mat, name);
  if (p == nullptr) throw std::invalid_argument("unknown coefficient " + std::string(name));
  return *p;
}

void set_coefficient(MaterialCoefficients& mat, std::string_view name, double value) {
  double* p = field(mat, name);
  if (p == nullptr) throw std::invalid_argument("unknown coefficient " + std::string(name));
  *p = value;
}

MaterialCoefficients validate_coefficients(const std::map<std::string, double>& raw) {
  MaterialCoefficients mat;
  for (auto name : kCoefficientNames) {
    auto it = raw.find(std::string(name));
    if (it == raw.end()) throw SolverError(ErrorCode::MissingField, std::string(name));
    if (!std::isfinite(it->second)) throw SolverError(ErrorCode::NonFinite, std::string(name));
    set_coefficient(mat, name, it->second);
  }
  return mat;
}

EllipticityReport check_strong_ellipticity(const MaterialCoefficients& m) {
  const double d = m.d();
  const std::pair<std::string_view, double> checks[] = {
      {cond::kRho, m.rho},
      {cond::kA, m.a},
      {cond::kB, m.b},
      {cond::kK, m.k},
      {cond::kPModulus, m.p_modulus()},
      {cond::kMu, m.mu},
      {cond::kLongitudinal, m.p_modulus() * d - m.eps_sum() * m.eps_sum()},
      {cond::kTransverse, m.mu * m.d2 - m.eps2 * m.eps2},
  };

  EllipticityReport report;
  for (const auto& [name, slack] : checks) {
    report.margins.emplace(name, slack);
    // NaN slack counts as a violation.
    if (!(slack > 0.0)) report.violations.emplace_back(name);
  }
  report.passed = report.violations.empty();
  return report;
}

CubicCoefficients derived_cubic_unchecked(const MaterialCoefficients& m) {
  const double d = m.d();
  const double pm = m.p_modulus();
  const double es = m.eps_sum();
  const double rho = m.rho, a = m.a, b = m.b, k = m.k;

  CubicCoefficients c;
  c.d = d;
  c.a2 = m.mu / rho + m.d2 / b;
  c.a0 = (m.mu * m.d2 - m.eps2 * m.eps2) / (rho * b);

  const double elastic_micro = pm / rho + d / b;
  const double reduced = pm * d - es * es;
  const double mixed = d * m.beta - es * m.m;
  c.b4 = elastic_micro + (m.m * m.m / b + m.beta * m.beta / rho) / a + k / a;
  c.b2 = ((a * d + m.m * m.m) * reduced + mixed * mixed) / (rho * a * b * d) + (k / a) * elastic_micro;
  c.b0 = k / (rho * a * b) * reduced;

  c.h1 = (c.b4 * c.b4 - 3.0 * c.b2) / 3.0;
  c.h0 = -(2.0 * c.b4 * c.b4 * c.b4 - 9.0 * c.b2 * c.b4 + 27.0 * c.b0) / 27.0;
  return c;
}

CubicCoefficients derived_cubic(const MaterialCoefficients& m) {
  const auto report = check_strong_ellipticity(m);
  if (!report.passed) {
    throw SolverError(ErrorCode::NotStronglyElliptic, "violated: " + report.violations.front());
  }
  return derived_cubic_unchecked(m);
}

bool check_distinct_cubic_roots(const CubicCoefficients& c) {
  return c.h0 * c.h0 < (4.0 / 27.0) * c.h1 * c.h1 * c.h1;
}

std::string_view coupling_tag_name(CouplingTag tag) {
  switch (tag) {
    case CouplingTag::general: return "general";
    case CouplingTag::case_i: return "case_i";
    case CouplingTag::case_ii: return "case_ii";
    case CouplingTag::case_iii: return "case_iii";
    case CouplingTag::degenerate: return "degenerate";
  }
  return "degenerate";
}

CouplingCase classify_coupling(const MaterialCoefficients& m, double zero_threshold) {
  auto zero = [zero_threshold](double x) { return std::abs(x) <= zero_threshold; };
  const bool beta0 = zero(m.beta), m0 = zero(m.m), e10 = zero(m.eps1), e20 = zero(m.eps2);

  if (!m0 && !beta0 && (!e10 || !e20)) {
    return {CouplingTag::general, "all couplings active"};
  }
  if (beta0 && !m0 && e10 && e20) {
    return {CouplingTag::case_i, "beta = eps1 = eps2 = 0: elastic motion decouples"};
  }
  if (!beta0 && m0 && e10 && e20) {
    return {CouplingTag::case_ii, "m = eps1 = eps2 = 0: microtemperatures decouple"};
  }
  if (beta0 && m0 && !e10 && !e20) {
    return {CouplingTag::case_iii, "beta = m = 0: temperature decouples"};
  }
  return {CouplingTag::degenerate, "coupling pattern outside the supported cases"};
}

}  // namespace rayleigh
