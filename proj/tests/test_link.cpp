#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "simlearn/errors.hpp"
#include "simlearn/hermite.hpp"
#include "simlearn/link.hpp"
#include "simlearn/rng.hpp"

using namespace simlearn;

TEST_CASE("pure-he2 is its own normalized form") {
  const LinkSpec link = make_link("pure-he2");
  CHECK(link.k_star == 2);
  CHECK(link.c_kstar == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(link.C_kstar == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(link.B4 == doctest::Approx(15.0).epsilon(1e-8));
  CHECK(link.coeffs[0] == 0.0);
  CHECK(link.eval(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(link.tail_mass <= 1e-10);
  CHECK_FALSE(link.has_odd_term);
}

TEST_CASE("phase-square centers and normalizes to he_2") {
  const LinkSpec link = make_link("phase-square");
  CHECK(link.k_star == 2);
  CHECK(link.c_kstar == doctest::Approx(1.0).epsilon(1e-10));
  // (z^2 - 1)/sqrt(2) at 0.
  CHECK(link.eval(0.0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("relu and abs resolve the expected information exponents") {
  const LinkSpec relu = make_link("relu");
  CHECK(relu.k_star == 1);
  CHECK(relu.c_kstar > 0.0);
  CHECK(relu.has_odd_term);
  CHECK(relu.tail_mass > 0.0);  // mass beyond degree 16 exists but is small
  CHECK(relu.tail_mass < 0.01);

  const LinkSpec abs_link = make_link("abs");
  CHECK(abs_link.k_star == 2);
  CHECK_FALSE(abs_link.has_odd_term);
  // Raw c_2 of |z| is (E|z|^3 - E|z|)/sqrt(2) = sqrt(1/pi); the stored value
  // is rescaled over the truncated mass (tail beyond degree 16 ~ 3e-3), so
  // compare at 1% against the full-mass normalization.
  const double raw_c2 = (2.0 * std::sqrt(2.0 / M_PI) - std::sqrt(2.0 / M_PI)) / std::sqrt(2.0);
  CHECK(abs_link.coeffs[2] == doctest::Approx(raw_c2 / std::sqrt(1.0 - 2.0 / M_PI)).epsilon(0.01));
}

TEST_CASE("coefficient invariants hold for every builtin") {
  for (const char* name :
       {"pure-he1", "pure-he2", "pure-he3", "phase-square", "relu", "abs", "sigmoid-centered"}) {
    const LinkSpec link = make_link(name);
    double mass = 0.0;
    for (std::size_t k = 1; k < link.coeffs.size(); ++k) mass += link.coeffs[k] * link.coeffs[k];
    CHECK(std::fabs(mass - 1.0) <= 1e-6);
    for (int k = 1; k < link.k_star; ++k) {
      CHECK(std::fabs(link.coeffs[static_cast<std::size_t>(k)]) <= 1e-9);
    }
    CHECK(std::fabs(link.c_kstar) > 1e-6);
    CHECK(link.C_kstar >= static_cast<double>(link.k_star) * link.c_kstar * link.c_kstar - 1e-9);
  }
}

TEST_CASE("link_eval reproduces the stored coefficients") {
  const LinkSpec link = make_link("relu");
  Rng rng(41);
  constexpr std::size_t kN = 200'000;
  for (int k = 0; k <= 4; ++k) {
    double sum = 0.0, sumsq = 0.0;
    Rng local(41);
    for (std::size_t i = 0; i < kN; ++i) {
      const double z = local.gaussian();
      const double v = link_eval(link, z) * hermite_eval(k, z);
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(kN);
    const double var = std::max(0.0, sumsq / static_cast<double>(kN) - mean * mean);
    const double se = std::sqrt(var / static_cast<double>(kN));
    CHECK(std::fabs(mean - link.coeffs[static_cast<std::size_t>(k)]) <= 3.0 * se + 1e-9);
  }
}

TEST_CASE("info_exponent") {
  CHECK(info_exponent({0.0, 0.0, 1.0, 0.0}, 1e-9) == 2);
  CHECK(info_exponent({0.0, 1e-12, 0.8, 0.1}, 1e-9) == 2);
  CHECK(info_exponent(make_link("relu").coeffs, 1e-6) == 1);
  CHECK_THROWS_AS(info_exponent({0.5, 1e-12, 1e-12}, 1e-9), InvalidLinkError);
  CHECK_THROWS_AS(info_exponent({0.0, 1.0}, -1.0), ArgumentError);
}

TEST_CASE("explicit coefficient links") {
  const LinkSpec link = make_link_from_coeffs("mix", {0.3, 0.0, 0.6, 0.8});
  CHECK(link.k_star == 2);
  // Rescaled to unit mass: (0.6, 0.8) -> same (already unit).
  CHECK(link.coeffs[2] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(link.coeffs[3] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(link.has_odd_term);
  // eval is the centered series.
  const double z = 1.3;
  CHECK(link.eval(z) ==
        doctest::Approx(0.6 * hermite_eval(2, z) + 0.8 * hermite_eval(3, z)).epsilon(1e-12));

  CHECK_THROWS_AS(make_link_from_coeffs("flat", {1.0, 0.0, 0.0}), InvalidLinkError);
  CHECK_THROWS_AS(make_link_from_coeffs("empty", {}), ArgumentError);
  CHECK_THROWS_AS(make_link("no-such-link"), ArgumentError);
}

TEST_CASE("well-behaved builtins have strictly positive first coefficient") {
  CHECK(make_link("relu").coeffs[1] > 0.0);
  CHECK(make_link("sigmoid-centered").coeffs[1] > 0.0);
}
