#include <cmath>

#include <doctest.h>

#include "unruh/collective.hpp"
#include "unruh/errors.hpp"
#include "unruh/response.hpp"

using namespace unruh;
using namespace unruh::response;
using cavity::CavitySpec;

TEST_CASE("free-space normalisation") {
  CHECK(gamma_free_inertial() == doctest::Approx(1.0 / (4 * M_PI)).epsilon(1e-15));
  CHECK(gamma_free_inertial_quadrature().value == doctest::Approx(gamma_free_inertial()).epsilon(1e-10));
  CHECK(gamma_pair(0.0, CavitySpec::free_space(), 0.0).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("free-space Rindler rate is Planckian") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double expected = 1.0 / (1.0 - std::exp(-2 * M_PI / alpha));
    CHECK(gamma_pair(alpha, CavitySpec::free_space(), 0.0).value == doctest::Approx(expected).epsilon(1e-7));
  }
}

TEST_CASE("inertial limit of the Rindler rate") {
  // Both deviations are below double resolution, so only the bound is checked.
  CHECK(std::abs(gamma_pair(1e-1, CavitySpec::free_space(), 0.0).value - 1.0) < 1e-8);
  CHECK(std::abs(gamma_pair(1e-2, CavitySpec::free_space(), 0.0).value - 1.0) < 1e-8);
}

TEST_CASE("pair rates are even in the separation") {
  const auto cav = CavitySpec::from_detuning(1e-4, -1e-4);
  for (double alpha : {0.0, 1e-3})
    CHECK(gamma_pair(alpha, cav, 0.7).value == gamma_pair(alpha, cav, -0.7).value);
}

TEST_CASE("free-space inertial coherent coupling") {
  for (double dy : {0.5, 1.0, 2.3}) {
    const double x = 2 * M_PI * dy;
    CHECK(omega_pair(0.0, CavitySpec::free_space(), dy).value == doctest::Approx(-std::cos(x) / x).epsilon(1e-7));
  }
}

TEST_CASE("Rindler coherent coupling approaches the inertial one") {
  const auto cav = CavitySpec::from_detuning(1e-4, 0.0);
  const double w0 = omega_pair(0.0, cav, 1.0).value;
  const double e2 = std::abs(omega_pair(1e-2, cav, 1.0).value - w0);
  const double e3 = std::abs(omega_pair(1e-3, cav, 1.0).value - w0);
  CHECK(e3 < e2);
}

TEST_CASE("detailed balance") {
  CHECK(chi_from_gamma(2.0, 0.1) == doctest::Approx(2.0 * std::exp(-20 * M_PI)).epsilon(1e-14));
  CHECK(chi_from_gamma(1.0, 0.1) == doctest::Approx(5.2e-28).epsilon(0.02));
  CHECK(chi_from_gamma(1.0, 0.0) == 0.0);
  CHECK(chi_from_gamma(1.0, 0.2) > chi_from_gamma(1.0, 0.1));
}

TEST_CASE("self-convergence under tightened tolerances") {
  const auto cav = CavitySpec::from_detuning(1e-4, -1e-4);
  for (double alpha : {0.0, 1e-5}) {
    const auto a = gamma_pair(alpha, cav, 0.0);
    const auto b = gamma_pair(alpha, cav, 0.0, QuadratureConfig{}.tightened(0.5));
    CHECK(std::abs(a.value - b.value) <= std::max(a.error, 1e-12 * std::abs(a.value)));
  }
}

TEST_CASE("direct Rindler evaluation agrees with the kernel form") {
  const auto cav = CavitySpec::from_detuning(0.5, 0.3);
  const auto a = gamma_pair(0.5, cav, 0.0);
  const auto b = gamma_pair_direct(0.5, cav, 0.0, {.abs_tol = 1e-10, .rel_tol = 1e-7});
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-6));
}

TEST_CASE("rate matrix structure") {
  Scenario s;
  s.alpha = 1e-3;
  s.cavity = CavitySpec::from_detuning(1e-3, -1e-2);
  s.n_atoms = 5;
  s.spacing_d_over_lambda0 = 0.7;
  const auto rm = rate_matrix(s);
  REQUIRE(rm.size() == 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(rm.gamma(i, j) == rm.gamma(j, i));
      CHECK(rm.gamma(i, j) == rm.gamma(std::abs(i - j), 0));
      CHECK(rm.chi(i, j) == doctest::Approx(std::exp(-2 * M_PI / 1e-3) * rm.gamma(i, j)));
    }
  CHECK(rm.gamma(0, 0) == doctest::Approx(gamma_pair(1e-3, s.cavity, 0.0).value).epsilon(1e-14));
  CHECK(gamma_is_psd(rm));

  s.n_atoms = 1;
  const auto one = rate_matrix(s);
  CHECK(one.size() == 1);
  CHECK(collective::shape_factor(one) == 0.0);
}

TEST_CASE("scenario validation") {
  Scenario s;
  s.n_atoms = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.n_atoms = 2;
  s.theta0 = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.theta0 = M_PI;
  s.alpha = -1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
}
