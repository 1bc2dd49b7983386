#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rayleigh {

/// Constitutive constants of an isotropic thermoelastic solid with
/// microtemperatures. Units are whatever the caller uses consistently.
struct MaterialCoefficients {
  double rho = 0.0;     ///< mass density
  double a = 0.0;       ///< thermal inertia
  double b = 0.0;       ///< microthermal inertia
  double k = 0.0;       ///< thermal conductivity
  double lambda = 0.0;  ///< Lame modulus
  double mu = 0.0;      ///< shear modulus
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double eps1 = 0.0;  ///< elastic / microthermal coupling
  double eps2 = 0.0;
  double beta = 0.0;  ///< elastic / thermal coupling
  double m = 0.0;     ///< microthermal / thermal coupling

  double d() const { return d1 + d2 + d3; }
  double p_modulus() const { return lambda + 2.0 * mu; }
  double eps_sum() const { return eps1 + 2.0 * eps2; }

  bool operator==(const MaterialCoefficients&) const = default;
};

/// Field names in file order, matching the JSON keys.
inline constexpr std::array<std::string_view, 13> kCoefficientNames = {
    "rho", "a", "b", "k", "lambda", "mu", "d1", "d2", "d3", "eps1", "eps2", "beta", "m"};

double coefficient(const MaterialCoefficients& mat, std::string_view name);
void set_coefficient(MaterialCoefficients& mat, std::string_view name, double value);

/// Builds a record from a name->value map. Throws MissingField / NonFinite.
MaterialCoefficients validate_coefficients(const std::map<std::string, double>& raw);

// Identifiers of the strong-ellipticity inequalities.
namespace cond {
inline constexpr std::string_view kRho = "rho>0";
inline constexpr std::string_view kA = "a>0";
inline constexpr std::string_view kB = "b>0";
inline constexpr std::string_view kK = "k>0";
inline constexpr std::string_view kPModulus = "lambda+2mu>0";
inline constexpr std::string_view kMu = "mu>0";
inline constexpr std::string_view kLongitudinal = "(eps1+2eps2)^2<(lambda+2mu)d";
inline constexpr std::string_view kTransverse = "eps2^2<mu*d2";
}  // namespace cond

struct EllipticityReport {
  bool passed = false;
  std::vector<std::string> violations;
  /// Signed slack per condition, positive when the inequality holds.
  std::map<std::string, double> margins;
};

EllipticityReport check_strong_ellipticity(const MaterialCoefficients& mat);

/// Coefficients of q2(t) = t^2 - a2 t + a0 and q3(t) = t^3 - b4 t^2 + b2 t - b0,
/// plus the auxiliaries of the depressed cubic.
struct CubicCoefficients {
  double d = 0.0;
  double a2 = 0.0;
  double a0 = 0.0;
  double b4 = 0.0;
  double b2 = 0.0;
  double b0 = 0.0;
  double h0 = 0.0;
  double h1 = 0.0;
};

/// Throws NotStronglyElliptic when the material fails the check above.
CubicCoefficients derived_cubic(const MaterialCoefficients& mat);

/// Same formulas without the ellipticity guard. Used where only the algebra
/// matters (reduced-coefficient comparisons, limits).
CubicCoefficients derived_cubic_unchecked(const MaterialCoefficients& mat);

/// h0^2 < (4/27) h1^3, i.e. q3 has three distinct real roots.
bool check_distinct_cubic_roots(const CubicCoefficients& c);

enum class CouplingTag { general, case_i, case_ii, case_iii, degenerate };

struct CouplingCase {
  CouplingTag tag = CouplingTag::degenerate;
  std::string description;
};

std::string_view coupling_tag_name(CouplingTag tag);

/// Zero tests use |x| <= zero_threshold; the default treats only literal zeros
/// as vanishing.
CouplingCase classify_coupling(const MaterialCoefficients& mat, double zero_threshold = 0.0);

}  // namespace rayleigh
