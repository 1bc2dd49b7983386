#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <string>

#include "rayleigh/error.hpp"
#include "rayleigh/material.hpp"
#include "rayleigh/material_io.hpp"
#include "support.hpp"

using namespace rayleigh;
using rayleigh::testing::m0;

namespace {

std::map<std::string, double> m0_map() {
  std::map<std::string, double> raw;
  const auto m = m0();
  for (auto name : kCoefficientNames) raw[std::string(name)] = coefficient(m, name);
  return raw;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const SolverError& e) {
    return e.code();
  }
  FAIL("expected a SolverError");
  return ErrorCode::Unclassified;
}

}  // namespace

TEST_CASE("coefficient access round-trips every field") {
  MaterialCoefficients m;
  double x = 1.0;
  for (auto name : kCoefficientNames) set_coefficient(m, name, x += 0.25);
  x = 1.0;
  for (auto name : kCoefficientNames) CHECK(coefficient(m, name) == (x += 0.25));
  CHECK(m.d() == m.d1 + m.d2 + m.d3);
}

TEST_CASE("validate_coefficients") {
  CHECK(validate_coefficients(m0_map()) == m0());

  auto missing = m0_map();
  missing.erase("d3");
  CHECK(code_of([&] { validate_coefficients(missing); }) == ErrorCode::MissingField);

  auto inf = m0_map();
  inf["beta"] = std::numeric_limits<double>::infinity();
  CHECK(code_of([&] { validate_coefficients(inf); }) == ErrorCode::NonFinite);

  auto nan = m0_map();
  nan["rho"] = std::nan("");
  CHECK(code_of([&] { validate_coefficients(nan); }) == ErrorCode::NonFinite);
}

TEST_CASE("material JSON") {
  const auto m = m0();
  CHECK(parse_material_json(material_to_json(m)) == m);
  CHECK(load_material(std::string(RAYLEIGH_MATERIALS_DIR) + "/m0.json") == m);

  CHECK(code_of([] { parse_material_json("{\"rho\": 1,"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_material_json("[1, 2]"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_material_json("{\"rho\": \"one\"}"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_material_json("{\"rho\": 1}"); }) == ErrorCode::MissingField);
  CHECK(code_of([] { load_material("/nonexistent/material.json"); }) == ErrorCode::ParseError);
}

TEST_CASE("M0 is strongly elliptic") {
  const auto r = check_strong_ellipticity(m0());
  CHECK(r.passed);
  CHECK(r.violations.empty());
  REQUIRE(r.margins.size() == 8);
  for (const auto& [name, slack] : r.margins) CHECK_MESSAGE(slack > 0.0, name);
  CHECK(r.margins.at(std::string(cond::kLongitudinal)) == doctest::Approx(9.75));
  CHECK(r.margins.at(std::string(cond::kTransverse)) == doctest::Approx(0.75));
}

TEST_CASE("each single-coefficient perturbation flips its own condition") {
  struct Row {
    const char* field;
    double value;
    std::string_view condition;
  };
  const Row rows[] = {
      {"rho", -1.0, cond::kRho},           {"a", -1.0, cond::kA},
      {"b", -1.0, cond::kB},               {"k", -1.0, cond::kK},
      {"lambda", -1.5, cond::kLongitudinal}, {"mu", 0.2, cond::kTransverse},
      {"d1", -2.3, cond::kLongitudinal},   {"d2", 0.2, cond::kTransverse},
      {"d3", -2.3, cond::kLongitudinal},   {"eps1", 2.5, cond::kLongitudinal},
      {"eps2", 1.2, cond::kTransverse},
  };
  for (const auto& row : rows) {
    auto m = m0();
    set_coefficient(m, row.field, row.value);
    const auto r = check_strong_ellipticity(m);
    CAPTURE(row.field);
    CHECK_FALSE(r.passed);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0] == row.condition);
    CHECK(r.margins.at(std::string(row.condition)) <= 0.0);
  }
  // beta and m enter no inequality.
  for (const char* field : {"beta", "m"}) {
    for (double value : {-10.0, 0.0, 10.0}) {
      auto m = m0();
      set_coefficient(m, field, value);
      CHECK(check_strong_ellipticity(m).passed);
    }
  }
}

TEST_CASE("negative shear modulus") {
  auto m = m0();
  m.mu = -1.0;
  const auto r = check_strong_ellipticity(m);
  CHECK_FALSE(r.passed);
  const std::vector<std::string> expected = {std::string(cond::kPModulus), std::string(cond::kMu),
                                             std::string(cond::kLongitudinal), std::string(cond::kTransverse)};
  CHECK(r.violations == expected);
}

TEST_CASE("NaN slack is a violation") {
  auto m = m0();
  m.d2 = std::nan("");
  CHECK_FALSE(check_strong_ellipticity(m).passed);
}

TEST_CASE("derived cubic of M0") {
  const auto c = derived_cubic(m0());
  CHECK(c.d == 4.0);
  CHECK(c.a2 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.a0 == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(c.b4 == doctest::Approx(8.5).epsilon(1e-15));
  CHECK(c.b2 == doctest::Approx(17.75).epsilon(1e-15));
  CHECK(c.b0 == doctest::Approx(9.75).epsilon(1e-15));
  CHECK(c.h1 == doctest::Approx(19.0 / 3.0).epsilon(1e-14));
  CHECK(c.h0 == doctest::Approx(-(2 * 8.5 * 8.5 * 8.5 - 9 * 17.75 * 8.5 + 27 * 9.75) / 27).epsilon(1e-14));
  CHECK(check_distinct_cubic_roots(c));

  auto bad = m0();
  bad.k = -1.0;
  CHECK(code_of([&] { derived_cubic(bad); }) == ErrorCode::NotStronglyElliptic);
}

TEST_CASE("derived cubic is positive and bit-reproducible on random materials") {
  testing::Rng rng(101);
  for (int n = 0; n < 500; ++n) {
    const auto m = testing::random_material(rng);
    const auto c = derived_cubic(m);
    CHECK(c.a2 > 0.0);
    CHECK(c.a0 > 0.0);
    CHECK(c.b4 > 0.0);
    CHECK(c.b2 > 0.0);
    CHECK(c.b0 > 0.0);
    const auto again = derived_cubic(m);
    CHECK(std::memcmp(&c, &again, sizeof c) == 0);
  }
}

TEST_CASE("coupling classification") {
  CHECK(classify_coupling(m0()).tag == CouplingTag::general);
  CHECK(classify_coupling(testing::case_i_material()).tag == CouplingTag::case_i);
  CHECK(classify_coupling(testing::case_ii_material()).tag == CouplingTag::case_ii);
  CHECK(classify_coupling(testing::case_iii_material()).tag == CouplingTag::case_iii);

  auto only_eps1 = m0();
  only_eps1.eps2 = 0.0;
  CHECK(classify_coupling(only_eps1).tag == CouplingTag::general);

  auto none = m0();
  none.beta = none.m = none.eps1 = none.eps2 = 0.0;
  CHECK(classify_coupling(none).tag == CouplingTag::degenerate);

  auto half = m0();
  half.beta = half.m = 0.0;
  half.eps2 = 0.0;
  CHECK(classify_coupling(half).tag == CouplingTag::degenerate);

  auto tiny = m0();
  tiny.beta = 1e-14;
  tiny.eps1 = tiny.eps2 = 0.0;
  CHECK(classify_coupling(tiny).tag == CouplingTag::degenerate);
  CHECK(classify_coupling(tiny, 1e-12).tag == CouplingTag::case_i);
}
