#include <cmath>

#include <doctest.h>

#include "unruh/cavity.hpp"
#include "unruh/errors.hpp"
#include "unruh/quadrature.hpp"

using namespace unruh;
using namespace unruh::cavity;

TEST_CASE("mode density closed values") {
  for (double k : {0.0, 0.3, 1.7, M_PI, 5.0}) CHECK(mode_density(k, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mode_density(M_PI, 0.9) == doctest::Approx(19.0).epsilon(1e-12));
  CHECK(mode_density(M_PI / 2, 0.9) == doctest::Approx(0.10497237569060773).epsilon(1e-12));
  CHECK_THROWS_AS(mode_density(1.0, 1.0), DomainError);
}

TEST_CASE("mode density period integral") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  for (double R : {0.0, 0.5, 0.9}) {
    const auto I = quad::integrate([&](double k) { return mode_density(k, R); }, 0.0, 2 * M_PI, cfg);
    CAPTURE(R);
    CHECK(std::isfinite(I.value));
    if (R == 0.0) CHECK(I.value == doctest::Approx(2 * M_PI).epsilon(1e-12));
    else CHECK(I.value > 0.0);
  }
}

TEST_CASE("mirror unitarity") {
  for (double loss : {1.0, 0.5, 1e-4, 1e-9}) {
    const auto m = symmetric_mirror(CavitySpec::from_loss(loss, M_PI));
    CHECK(m.norm_residual() < 1e-12);
    CHECK(m.phase_residual() < 1e-12);
  }
}

TEST_CASE("mode profiles at transparent mirrors") {
  const auto spec = CavitySpec::from_reflectivity(0.0, 3.0);
  for (double x : {-1.4, 0.0, 0.9}) {
    const auto p = mode_profiles(x, 0.8, spec);
    CHECK(std::abs(p.u) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(p.u_prime) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("midplane mode weight equals the mode density") {
  const auto spec = CavitySpec::from_detuning(1e-3, -1e-2);
  for (double kx : {0.2, 0.9, 1.0, 2.5}) CHECK(mode_weight(kx, 0.0, 0.0, spec) == doctest::Approx(mode_density(kx * spec.width(), spec)).epsilon(1e-12));
}

TEST_CASE("mode point keeps resonance offsets exact") {
  const auto spec = CavitySpec::from_detuning(1e-9, -1e-7);
  const ModePoint p{3, 2e-10};
  CHECK(mode_weight(p, 0.0, 0.0, spec) == doctest::Approx(mode_density(3 * M_PI + 2e-10, spec)).epsilon(1e-6));
  const auto q = mode_point(p.kx(spec), spec);
  CHECK(q.n == 3);
}

TEST_CASE("resonance width shrinks like 1 - R^2") {
  double prev = INFINITY;
  for (double loss : {1e-2, 1e-3, 1e-4}) {
    const auto spec = CavitySpec::from_loss(loss, M_PI);
    const double hw = resonance_half_width(spec);
    CHECK(hw < prev);
    prev = hw;
    const double peak = mode_density(M_PI, spec);
    CHECK(mode_density(M_PI + hw, spec) == doctest::Approx(peak / 2).epsilon(1e-3));
  }
  const double h1 = resonance_half_width(CavitySpec::from_loss(1e-4, M_PI));
  const double h2 = resonance_half_width(CavitySpec::from_loss(1e-6, M_PI));
  const double slope = std::log(h1 / h2) / std::log(1e2);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("perfect mirror staircase") {
  CHECK(gamma0_perfect(0.4) == 0.0);
  CHECK(gamma0_perfect(0.75) == doctest::Approx(1 / 0.75));
  CHECK(gamma0_perfect(1.6) == doctest::Approx(2 / 1.6));
  CHECK(gamma0_perfect(0.5 - 1e-9) == 0.0);
  CHECK(gamma0_perfect(0.5 + 1e-9) > 1.9);
}

TEST_CASE("quality factor") {
  const double q3 = quality_factor(CavitySpec::from_detuning(1e-7, -1e-6));
  CHECK(q3 == doctest::Approx(M_PI * 1e7).epsilon(1e-5));
  const double q2 = quality_factor(CavitySpec::from_detuning(1e-8, -1e-7));
  CHECK(q2 == doctest::Approx(M_PI * 1e8).epsilon(1e-5));
  CHECK(quality_factor(CavitySpec::from_reflectivity(0.0, 2.0)) == 0.0);
}

TEST_CASE("cavity spec validation") {
  CHECK_THROWS_AS(CavitySpec::from_reflectivity(1.0, M_PI), DomainError);
  CHECK_THROWS_AS(CavitySpec::from_loss(0.5, -1.0), DomainError);
  CHECK(CavitySpec::from_detuning(1e-8, -1e-7).detuning() == doctest::Approx(-1e-7).epsilon(1e-6));
}
