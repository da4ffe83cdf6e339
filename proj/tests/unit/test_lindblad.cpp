#include <cmath>
#include <vector>

#include <doctest.h>

#include "unruh/errors.hpp"
#include "unruh/lindblad.hpp"

using namespace unruh;
using namespace unruh::lindblad;

namespace {

std::vector<double> grid(double t1, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = t1 * i / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("two-atom Dicke decay") {
  const auto g = grid(8.0, 801);
  const auto r = evolve(dicke_matrix(2, 1.0), M_PI, 0.0, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(r.profile.rate_samples[i] - 2 * std::exp(-2 * g[i]) * (1 + 2 * g[i])) < 1e-6);
  CHECK(r.max_trace_error < 1e-9);
  CHECK(r.min_state_eigenvalue > -1e-8);
  CHECK(r.profile.provenance == collective::Provenance::kOracle);
}

TEST_CASE("oracle photon count") {
  for (int n : {1, 3}) {
    const auto g = grid(20.0, 40001);
    const auto r = evolve(dicke_matrix(n, 1.0), 2.0, 0.3, g, {.keep_states = false});
    CHECK(std::abs(collective::integrate_profile(r.profile) - n * (1 - std::cos(2.0)) / 2) < 1e-6 * n);
  }
}

TEST_CASE("independent atoms follow single-atom decay") {
  response::RateMatrix rm;
  rm.gamma = Eigen::MatrixXd::Identity(3, 3) * 0.5;
  rm.chi = Eigen::MatrixXd::Zero(3, 3);
  rm.omega = Eigen::MatrixXd::Zero(3, 3);
  const auto g = grid(5.0, 101);
  const auto r = evolve(rm, M_PI, 0.0, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(r.profile.rate_samples[i] == doctest::Approx(1.5 * std::exp(-0.5 * g[i])).epsilon(1e-8));
  const auto c = pair_correlators(r.trajectory);
  for (double m : c.max_residual) CHECK(m < 1e-10);
}

TEST_CASE("oracle rejects bad input") {
  CHECK_THROWS_AS(evolve(dicke_matrix(kMaxAtoms + 1, 1.0), M_PI, 0.0, {0.0, 1.0}), DomainError);
  auto rm = dicke_matrix(2, 1.0);
  rm.gamma(0, 1) = rm.gamma(1, 0) = 2.0;
  CHECK_THROWS_AS(evolve(rm, M_PI, 0.0, {0.0, 1.0}), DomainError);
}
