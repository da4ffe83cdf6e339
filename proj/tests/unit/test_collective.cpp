#include <cmath>
#include <vector>

#include <doctest.h>

#include "unruh/collective.hpp"
#include "unruh/errors.hpp"

using namespace unruh;
using namespace unruh::collective;

namespace {

std::vector<double> grid(double t1, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = t1 * i / (n - 1);
  return g;
}

double max_rel(const EmissionProfile& a, const EmissionProfile& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rate_samples.size(); ++i)
    m = std::max(m, std::abs(a.rate_samples[i] - b.rate_samples[i]) / std::abs(b.rate_samples[i]));
  return m;
}

}  // namespace

TEST_CASE("shape factor") {
  for (int n : {2, 5, 20}) {
    const Eigen::MatrixXd g = Eigen::MatrixXd::Constant(n, n, 0.3);
    CHECK(shape_factor(g) * n == doctest::Approx(n - 1).epsilon(1e-14));
  }
  CHECK(shape_factor(Eigen::MatrixXd::Identity(4, 4)) == 0.0);
}

TEST_CASE("burst times") {
  const auto b = burst_times(1.0, 0.95, 20);
  CHECK(b.tau_d == doctest::Approx(std::log(19.0) / 20).epsilon(1e-14));
  CHECK(b.tau_sr == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(burst_times(1.0, 0.5, 2).tau_d == 0.0);
  const auto c = burst_times(3.7, 0.8, 30);
  CHECK(c.tau_d / c.tau_sr == doctest::Approx(std::log(24.0)).epsilon(1e-14));
}

TEST_CASE("sech profile") {
  const auto b = burst_times(1.0, 0.95, 20);
  const auto p = profile_sech(1.0, 0.95, 20, {b.tau_d - 0.03, b.tau_d, b.tau_d + 0.03});
  CHECK(p.rate_samples[1] == doctest::Approx(400 / 3.8).epsilon(1e-13));
  CHECK(p.rate_samples[0] == doctest::Approx(p.rate_samples[2]).epsilon(1e-12));
  CHECK(total_quanta(1.0, 0.0, 0.95, 20, M_PI) == doctest::Approx(20.0).epsilon(1e-7));
}

TEST_CASE("general profile limits") {
  const auto g = grid(4.0, 201);
  const auto ind = profile_general(1.0, 0.0, 20, M_PI, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(ind.rate_samples[i] == doctest::Approx(20 * std::exp(-g[i])).epsilon(1e-12));
  const auto half = profile_general(0.7, 0.0, 10, M_PI / 2, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(half.rate_samples[i] == doctest::Approx(10 * 0.7 * std::exp(-0.7 * g[i]) * 0.5).epsilon(1e-12));
  const auto s = grid(0.5, 401);
  CHECK(max_rel(profile_general(1.0, 0.95, 20, M_PI - 1e-6, s), profile_sech(1.0, 0.95, 20, s)) < 1e-4);
}

TEST_CASE("absorption profile reduces to the emission profile") {
  const auto g = grid(0.6, 301);
  for (double theta : {M_PI - 1e-3, 2.0, 0.5}) {
    const auto a = profile_with_absorption(1.0, 0.0, 0.95, 20, theta, g);
    CHECK(max_rel(a, profile_general(1.0, 0.95, 20, theta, g)) < 1e-12);
    const auto b = profile_with_absorption(1.0, 5.2e-28, 0.95, 20, theta, g);
    CHECK(max_rel(b, profile_general(1.0, 0.95, 20, theta, g)) < 1e-12);
  }
}

TEST_CASE("ODE reproduces the closed forms") {
  const auto g = grid(1.5, 601);
  const auto ode = solve_W_ode(1.0, 0.0, 0.95, 20, M_PI - 1e-3, g);
  CHECK(ode.provenance == Provenance::kOde);
  CHECK(max_rel(ode, profile_general(1.0, 0.95, 20, M_PI - 1e-3, g)) < 1e-8);
  const auto ab = solve_W_ode(1.0, 0.2, 0.6, 8, 2.5, g);
  CHECK(max_rel(ab, profile_with_absorption(1.0, 0.2, 0.6, 8, 2.5, g)) < 1e-8);
}

TEST_CASE("photon conservation") {
  for (double theta : {M_PI, M_PI - 1e-3, 2.0, 0.7})
    for (double mu : {0.0, 0.5, 0.95}) {
      CAPTURE(theta);
      CAPTURE(mu);
      const double expected = 20 * (1 - std::cos(theta)) / 2;
      CHECK(std::abs(total_quanta(1.0, 0.0, mu, 20, theta) - expected) <= 1e-6 * 20);
    }
}

TEST_CASE("delay ratio") {
  CHECK(delay_ratio(1.0, 0.9, 1.0, 0.9, 20).exact == doctest::Approx(1.0).epsilon(1e-15));
  const auto r = delay_ratio(1.0, 0.95, 50.0, 0.95, 20);
  CHECK(r.exact == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(r.large_muN == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(r.asymptotic == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(infer_gamma_from_delay(1.0, 2.0, 0.5) == doctest::Approx(4.0));
}

TEST_CASE("resolvability gate") {
  const auto s0 = summarize(1.0, 0.95, 20, M_PI);
  const auto fast = summarize(50.0, 0.95, 20, M_PI);
  const auto near = summarize(1.5, 0.95, 20, M_PI);
  const auto r = resolvability(s0, fast);
  CHECK(r.metric == doctest::Approx((s0.tau_d - fast.tau_d) / (s0.tau_sr + fast.tau_sr)));
  CHECK(r.resolved == (r.metric > kDefaultSigma));
  CHECK_FALSE(resolvability(s0, near, 0.0).resolved);
  CHECK(r.metric < std::log(19.0));
}

TEST_CASE("delay peak over the cooperativity") {
  const double m = tau_d_peak_muN();
  CHECK(m + 1 == doctest::Approx(m * std::log(m)).epsilon(1e-12));
  const auto t = tau_d_vs_muN(1.0, {m - 0.1, m, m + 0.1});
  CHECK(t[1] > t[0]);
  CHECK(t[1] > t[2]);
}

TEST_CASE("dephasing report") {
  Eigen::MatrixXd om(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) om(i, j) = 1.0 / (1 + std::abs(i - j));
  const auto rep = dephasing_report(om);
  CHECK(rep.lamb_shifts.size() == 10);
  CHECK(rep.variance >= 0.0);
  CHECK(rep.bulk_spread >= 0.0);
  const auto flat = dephasing_report(Eigen::MatrixXd::Constant(6, 6, 0.2));
  CHECK(flat.variance == doctest::Approx(0.0));
}

TEST_CASE("summaries") {
  const auto s = summarize(2.0, 0.95, 20, M_PI);
  CHECK(s.muN == doctest::Approx(19.0));
  CHECK(s.peak_rate == doctest::Approx(2.0 * 400 / 3.8));
  CHECK(s.total_quanta == doctest::Approx(20.0).epsilon(1e-7));
  CHECK_THROWS_AS(burst_times(-1.0, 0.5, 4), DomainError);
  CHECK_THROWS_AS(profile_general(1.0, 0.5, 4, 0.0, {0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(profile_general(1.0, 0.5, 4, M_PI, {1.0, 0.0}), DomainError);
}
