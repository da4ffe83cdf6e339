#include <cmath>
#include <vector>

#include <doctest.h>

#include "unruh/errors.hpp"
#include "unruh/specfun.hpp"

using namespace unruh;
using namespace unruh::specfun;

namespace {

// mpmath, 40 digits: exp(pi nu/2) Re K_{i nu}(x)
struct Golden {
  double nu, x, value;
};
const Golden kScaledK[] = {
    {1, 1, 1.3922870255307374367},       {5, 2, -0.89215616281185401702},   {5, 8, 0.082847006349786039675},
    {20, 10, -0.21799313603226692586},   {20, 60, 2.214112564026222351e-15}, {20, 19, 0.69194104262495451903},
    {100, 50, 0.25535405681825180042},   {100, 150, 1.107305336416283327e-13},
    {300, 250, 0.063363516132393600103}, {300, 299, 0.23865614771326979145},
};

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("scaled K against high-precision values") {
  for (const auto& g : kScaledK) {
    CAPTURE(g.nu);
    CAPTURE(g.x);
    CHECK(close(besselK_im_scaled(BesselOrder(g.nu), g.x), g.value, 1e-8));
  }
}

TEST_CASE("quadrature and uniform paths agree on the overlap grid") {
  for (double nu : {5.0, 20.0, 100.0}) {
    for (int k = 0; k <= 28; ++k) {
      const double z = 0.2 + 0.1 * k;
      const double a = besselK_im_scaled_quadrature(BesselOrder(nu), nu * z).value;
      const double b = besselK_im_scaled_uniform(BesselOrder(nu), nu * z);
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(std::abs(a - b) <= 1e-6 * std::max({std::abs(a), std::abs(b), 1e-300}));
    }
  }
}

TEST_CASE("paths agree in the switch band") {
  for (double nu : {150.0, 250.0, 400.0})
    for (double z : {0.5, 0.95, 1.0, 1.05, 1.5}) {
      const double a = besselK_im_scaled_quadrature(BesselOrder(nu), nu * z).value;
      const double b = besselK_im_scaled_uniform(BesselOrder(nu), nu * z);
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(std::abs(a - b) <= 1e-8 * std::max(std::abs(a), std::abs(b)));
    }
}

TEST_CASE("scaled K decays monotonically beyond the turning point") {
  for (double nu : {5.0, 50.0, 500.0}) {
    double prev = besselK_im_scaled(BesselOrder(nu), 1.05 * nu);
    CHECK(prev > 0.0);
    for (double z = 1.1; z < 2.5; z += 0.1) {
      const double v = besselK_im_scaled(BesselOrder(nu), z * nu);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
  CHECK(besselK_im_scaled(BesselOrder(5.0), 200.0) < 1e-80);
}

TEST_CASE("scaled K oscillates below the turning point") {
  int changes = 0;
  double prev = besselK_im_scaled(BesselOrder(50.0), 1.0);
  for (double x = 1.5; x < 45.0; x += 0.5) {
    const double v = besselK_im_scaled(BesselOrder(50.0), x);
    if (v * prev < 0.0) ++changes;
    prev = v;
  }
  CHECK(changes >= 5);
}

TEST_CASE("scaled I-sum against series values") {
  CHECK(close(besselI_im_sum(BesselOrder(5.0), 2.0), -618.20021105800227666, 1e-10));
  CHECK(close(besselI_im_sum_scaled(BesselOrder(5.0), 2.0), -0.23998730260091959222, 1e-10));
  CHECK(close(besselI_im_sum_scaled(BesselOrder(1.0), 1.0), 0.7902748626740154376, 1e-12));
  CHECK(close(besselI_im_sum_scaled(BesselOrder(1.0), 1e-6), -0.05563528667951174519, 1e-10));
  CHECK(close(besselI_im_sum_scaled(BesselOrder(20.0), 15.0), -0.20889674355558652853, 1e-8));
  CHECK_THROWS_AS(besselI_im_sum(BesselOrder(1e4), 1.0), DomainError);
}

TEST_CASE("order must be positive and finite") {
  CHECK_THROWS_AS(BesselOrder(0.0), DomainError);
  CHECK_THROWS_AS(BesselOrder(-1.0), DomainError);
  CHECK_THROWS_AS(BesselOrder(NAN), DomainError);
}

TEST_CASE("Rindler kernel values") {
  CHECK(close(rindler_kernel(1.5, 0.1), 0.041156582237888676349, 1e-8));
  CHECK(close(rindler_kernel(0.5, 0.1), -8.7197254412906655429, 1e-8));
  CHECK(close(rindler_kernel(0.9, 0.1), 31.837791031553281235, 1e-8));
  CHECK(close(rindler_kernel(2.0, 0.5), 0.24013477131797268184, 1e-8));
}

TEST_CASE("Rindler kernel sign structure at alpha = 0.1") {
  int changes = 0;
  double prev = rindler_kernel(0.02, 0.1);
  for (int i = 2; i <= 100; ++i) {
    const double w = 0.02 * i;
    const double v = rindler_kernel(w, 0.1);
    if (w > 1.0) CHECK(v > 0.0);
    if (w < 1.0 && v * prev < 0.0) ++changes;
    prev = v;
  }
  CHECK(changes >= 1);
}

TEST_CASE("time-domain kernel matches the Bessel form") {
  const auto td = rindler_kernel_timedomain(1.5, 0.1);
  CHECK(std::abs(td.imag) < 1e-8 * std::abs(td.real) + 1e-12);
  CHECK(close(td.real, rindler_kernel(1.5, 0.1), 1e-5));
  const auto g = rindler_kernel_timedomain(0.3, 0.5);
  CHECK(close(g.real, -9.8655761441802387574, 1e-6));
  CHECK_THROWS_AS(rindler_kernel_timedomain(1.0, 0.01), DomainError);
}

TEST_CASE("local mean of K squared tends to the classical density") {
  for (double z : {0.3, 0.6, 0.9}) {
    const double expected = 1.0 / std::sqrt(1.0 - z * z);
    CHECK(close(scaled_K_squared_average(1e6, z), expected, 1e-3));
  }
  CHECK(scaled_K_squared_average(1e6, 1.2) == 0.0);
}

TEST_CASE("Airy variable inverts") {
  for (double z : {0.2, 0.7, 0.999, 1.001, 1.8}) CHECK(close(z_from_airy_variable(500.0, airy_variable(500.0, z)), z, 1e-12));
}
