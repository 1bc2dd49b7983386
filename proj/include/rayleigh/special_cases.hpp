#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rayleigh/material.hpp"
#include "rayleigh/modes.hpp"
#include "rayleigh/secular.hpp"

namespace rayleigh {

/// Closed-form roots for a decoupled material. Index 1-2 are the q2 roots,
/// 3-5 the q3 roots; labels record which formula produced each one.
struct CaseRootSet {
  CouplingTag tag = CouplingTag::degenerate;
  std::array<ModeRoot, 5> roots;
  std::array<std::string, 5> labels;
};

/// Throws WrongCase unless classify_coupling(mat) yields `tag` (one of the three
/// decoupled cases), NotStronglyElliptic, and DegenerateRoots when two of the
/// five roots coincide.
CaseRootSet roots_case(const MaterialCoefficients& mat, CouplingTag tag);

/// Kernel vectors of D_{p_k} for the decoupled cases, each checked against the
/// numeric kernel (DegenerateKernel on mismatch). The case-specific scalars
/// (Pi, Omega, Psi, Psi_hat) are stored in ModeBasis::aux.
std::array<ModeBasis, 5> mode_vectors_case(const MaterialCoefficients& mat, const ComplexSpeed& v, CouplingTag tag);

/// Which form of the explicit secular expressions to evaluate. `printed` is
/// the literal transcription, which has p2 and p3 swapped in case i and beta v^2
/// in place of beta^2 v^2 in case ii. `corrected` fixes both, which makes each
/// a constant multiple of det A.
enum class ExplicitForm { corrected, printed };

/// Explicit secular function for case i or ii. v = 0 returns 0 (overall
/// factor v); otherwise v must be admissible. Throws WrongCase for other tags.
cd secular_case_explicit(const MaterialCoefficients& mat, cd v, CouplingTag tag,
                         ExplicitForm form = ExplicitForm::corrected);

/// det A assembled from mode_vectors_case; the only route for case iii.
cd secular_case_det(const MaterialCoefficients& mat, const ComplexSpeed& v, CouplingTag tag);

/// Zero/nonzero classification of two secular routes on the same samples.
/// A value counts as zero when |f| <= 1e-8 * scale and as nonzero when
/// |f| >= 1e-3 * scale, scale being that route's median |f| over the samples;
/// anything in between is ambiguous and counts as a disagreement.
struct ZeroSetAgreement {
  int samples = 0;
  int agree = 0;
  int both_zero = 0;
  double explicit_scale = 0.0;
  double det_scale = 0.0;
};

inline constexpr double kZeroClassTol = 1e-8;
inline constexpr double kNonzeroClassTol = 1e-3;

ZeroSetAgreement zero_set_agreement(const MaterialCoefficients& mat, CouplingTag tag, std::span<const cd> speeds,
                                    ExplicitForm form = ExplicitForm::corrected);

/// Deterministic speeds uniformly spread over re in [re_lo, re_hi] and
/// Im v in [im_lo, im_hi] (im_hi < 0 keeps them off the real axis). The
/// secular functions carry a factor that vanishes at v = 0, so the default box
/// starts at re = 0.3 to keep generic samples above the nonzero threshold.
std::vector<cd> sample_speeds(int n, std::uint64_t seed, double re_lo = 0.3, double re_hi = 1.5,
                              double im_lo = -0.6, double im_hi = -0.01);

/// Monic q3 coefficients obtained by expanding the factorized forms of the
/// decoupled cases.
struct ReducedCubic {
  double b4 = 0.0;
  double b2 = 0.0;
  double b0 = 0.0;
};

ReducedCubic reduced_q3(const MaterialCoefficients& mat, CouplingTag tag);

struct LimitReport {
  CouplingTag tag = CouplingTag::degenerate;
  std::vector<double> scales;  ///< multipliers applied to the vanishing couplings
  std::vector<double> gaps;    ///< max |t_k(scale) - t_k(0)| per scale
  double rate = 0.0;           ///< mean slope of log10(gap) against log10(scale)
  bool monotone = false;       ///< gaps strictly decrease
};

/// Shrinks the couplings that vanish in `tag` by 1e-2, 1e-4, 1e-6 and compares
/// the general-route roots with the case closed forms.
LimitReport limit_consistency(const MaterialCoefficients& general, CouplingTag tag);

/// Copy of `mat` with the couplings that vanish in `tag` multiplied by `scale`.
MaterialCoefficients scale_vanishing_couplings(const MaterialCoefficients& mat, CouplingTag tag, double scale);

}  // namespace rayleigh
