#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rayleigh/error.hpp"
#include "rayleigh/special_cases.hpp"
#include "rayleigh/spectrum.hpp"
#include "support.hpp"

using namespace rayleigh;
using namespace rayleigh::testing;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const SolverError& e) {
    return e.code();
  }
  return ErrorCode::Unclassified;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

MaterialCoefficients random_case_material(Rng& rng, CouplingTag tag) {
  for (;;) {
    auto m = scale_vanishing_couplings(random_material(rng), tag, 0.0);
    if (classify_coupling(m).tag != tag) continue;
    try {
      (void)roots_case(m, tag);
    } catch (const SolverError&) {
      continue;
    }
    return m;
  }
}

const CouplingTag kCases[] = {CouplingTag::case_i, CouplingTag::case_ii, CouplingTag::case_iii};

}  // namespace

TEST_CASE("closed-form roots of the representatives") {
  struct Row {
    MaterialCoefficients m;
    CouplingTag tag;
    double t[5];
  };
  // Radical roots from exact quadratic solves in rational arithmetic.
  const Row rows[] = {
      {case_i_material(), CouplingTag::case_i, {1.0, 2.0, 3.0, 4.325183813591931, 0.9248161864080695}},
      {case_ii_material(), CouplingTag::case_ii, {1.0, 2.0, 4.0, 3.356107225224513, 0.893892774775487}},
      {case_iii_material(), CouplingTag::case_iii, {1.5, 0.5, 1.0, 5.08113883008419, 1.9188611699158102}},
  };
  for (const auto& row : rows) {
    const auto set = roots_case(row.m, row.tag);
    CHECK(set.tag == row.tag);
    for (int k = 0; k < 5; ++k) {
      CAPTURE(k);
      CHECK(set.roots[k].index == k + 1);
      CHECK(rel(set.roots[k].t, row.t[k]) < 1e-14);
      CHECK_FALSE(set.labels[k].empty());
    }
    // Same multiset as the general route, which only needs ellipticity.
    auto general = mode_speeds(row.m).roots;
    std::array<double, 5> a{}, b{};
    for (int k = 0; k < 5; ++k) {
      a[k] = general[k].t;
      b[k] = set.roots[k].t;
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int k = 0; k < 5; ++k) CHECK(rel(a[k], b[k]) < 1e-12);
  }
}

TEST_CASE("case root guards") {
  CHECK(code_of([] { roots_case(m0(), CouplingTag::general); }) == ErrorCode::WrongCase);
  CHECK(code_of([] { roots_case(case_i_material(), CouplingTag::case_ii); }) == ErrorCode::WrongCase);

  auto degenerate = m0();  // mu/rho = d2/b = 1
  degenerate.beta = degenerate.eps1 = degenerate.eps2 = 0.0;
  CHECK(code_of([&] { roots_case(degenerate, CouplingTag::case_i); }) == ErrorCode::DegenerateRoots);

  auto soft = case_ii_material();
  soft.b = -1.0;
  CHECK(code_of([&] { roots_case(soft, CouplingTag::case_ii); }) == ErrorCode::NotStronglyElliptic);
}

TEST_CASE("case kernel vectors over sampled materials and speeds") {
  Rng rng(71);
  for (CouplingTag tag : kCases) {
    for (int n = 0; n < 40; ++n) {
      const auto m = random_case_material(rng, tag);
      const auto v = random_speed(rng, m);
      const auto modes = mode_vectors_case(m, v, tag);
      for (const auto& mb : modes) {
        const Matrix5 d = assemble_Dp(m, v.value(), mb.p.p);
        CAPTURE(coupling_tag_name(tag));
        CAPTURE(mb.mode.index);
        CHECK((d * mb.u_tilde).norm() <= 1e-10 * d.norm() * mb.u_tilde.norm());
        CHECK(angle_sine(mb.u_tilde, inverse_iteration_kernel(d)) <= 1e-8);
        CHECK(mb.p.beta_im() > 0.0);
      }
    }
  }
}

TEST_CASE("case iii transverse vectors use their own exponent") {
  const auto m = case_iii_material();
  const ComplexSpeed v(0.4, 0.1);
  const auto modes = mode_vectors_case(m, v, CouplingTag::case_iii);
  const cd p1 = modes[0].p.p, p2 = modes[1].p.p;
  const cd psi_hat = modes[0].aux.at("Psi_hat");

  Vector5 own, borrowed;
  own << -m.eps2 * p1, m.eps2, -p1 * psi_hat, psi_hat, 0.0;
  borrowed << -m.eps2 * p1, m.eps2, -p2 * psi_hat, psi_hat, 0.0;
  const Matrix5 d = assemble_Dp(m, v.value(), p1);
  CHECK((d * own).norm() <= 1e-12 * d.norm() * own.norm());
  CHECK((d * borrowed).norm() > 1e-3 * d.norm() * borrowed.norm());
  CHECK(angle_sine(own, modes[0].u_tilde) < 1e-12);
}

TEST_CASE("explicit secular forms are constant multiples of det A") {
  const struct {
    MaterialCoefficients m;
    CouplingTag tag;
    double factor;
  } rows[] = {{case_i_material(), CouplingTag::case_i, 0.8}, {case_ii_material(), CouplingTag::case_ii, -8.0}};
  for (const auto& row : rows) {
    for (const cd v : sample_speeds(50, 3)) {
      const cd e = secular_case_explicit(row.m, v, row.tag);
      const cd d = secular_case_det(row.m, ComplexSpeed::from_complex(v), row.tag);
      CHECK(std::abs(e - row.factor * d) <= 1e-12 * std::abs(e));
    }
    CHECK(secular_case_explicit(row.m, 0.0, row.tag) == cd(0.0));
  }
  CHECK(code_of([] { secular_case_explicit(case_iii_material(), 0.5, CouplingTag::case_iii); }) ==
        ErrorCode::WrongCase);
}

TEST_CASE("zero-set agreement on 200 samples") {
  const auto speeds = sample_speeds(200, 20170601);
  for (const auto& [m, tag] : {std::pair{case_i_material(), CouplingTag::case_i},
                               std::pair{case_ii_material(), CouplingTag::case_ii}}) {
    const auto agreement = zero_set_agreement(m, tag, speeds);
    CHECK(agreement.samples == 200);
    CHECK(agreement.agree == 200);
  }
  const auto first = sample_speeds(5, 9), second = sample_speeds(5, 9);
  CHECK(first == second);
  for (const cd v : sample_speeds(500, 10)) {
    CHECK(v.real() >= 0.3);
    CHECK(v.real() <= 1.5);
    CHECK(v.imag() <= -0.01);
    CHECK(v.imag() >= -0.6);
  }
}

TEST_CASE("the uncorrected case i expression moves the real zero") {
  const auto m = case_i_material();
  const auto tag = CouplingTag::case_i;
  // Real zero of det A, located by bisection on Im det along the real axis.
  const double v_det = 0.9194016867619661;
  const double v_printed = 0.8740320488976422;
  const double scale = std::abs(secular_case_explicit(m, 0.6, tag));
  CHECK(std::abs(secular_case_det(m, ComplexSpeed(v_det, 0.0), tag)) <
        1e-12 * std::abs(secular_case_det(m, ComplexSpeed(0.6, 0.0), tag)));
  CHECK(std::abs(secular_case_explicit(m, v_det, tag)) < 1e-12 * scale);
  CHECK(std::abs(secular_case_explicit(m, v_det, tag, ExplicitForm::printed)) > 1e-3 * scale);
  const double printed_scale = std::abs(secular_case_explicit(m, 0.6, tag, ExplicitForm::printed));
  CHECK(std::abs(secular_case_explicit(m, v_printed, tag, ExplicitForm::printed)) < 1e-12 * printed_scale);
}

TEST_CASE("reduced cubic matches the general coefficients at zero coupling") {
  Rng rng(73);
  for (CouplingTag tag : kCases) {
    for (int n = 0; n < 200; ++n) {
      const auto m = scale_vanishing_couplings(random_material(rng), tag, 0.0);
      const auto general = derived_cubic_unchecked(m);
      const auto reduced = reduced_q3(m, tag);
      CAPTURE(coupling_tag_name(tag));
      CHECK(rel(reduced.b4, general.b4) <= 1e-12);
      CHECK(rel(reduced.b2, general.b2) <= 1e-12);
      CHECK(rel(reduced.b0, general.b0) <= 1e-12);
    }
  }
}

TEST_CASE("general roots approach the case roots as couplings vanish") {
  Rng rng(79);
  for (CouplingTag tag : kCases) {
    for (int n = 0; n < 20; ++n) {
      const auto m = random_material(rng);
      try {
        (void)roots_case(scale_vanishing_couplings(m, tag, 0.0), tag);
      } catch (const SolverError&) {
        continue;
      }
      const auto report = limit_consistency(m, tag);
      CAPTURE(coupling_tag_name(tag));
      REQUIRE(report.gaps.size() == 3);
      CHECK(report.gaps.back() < 1e-9);
      CHECK(report.rate > 0.9);
    }
  }
  CHECK(code_of([] { scale_vanishing_couplings(m0(), CouplingTag::general, 0.5); }) == ErrorCode::WrongCase);
}
