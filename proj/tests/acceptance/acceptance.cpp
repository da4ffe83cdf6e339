#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "unruh/cavity.hpp"
#include "unruh/collective.hpp"
#include "unruh/lindblad.hpp"
#include "unruh/quadrature.hpp"
#include "unruh/response.hpp"
#include "unruh/specfun.hpp"

using namespace unruh;
using cavity::CavitySpec;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

double simpson(const collective::EmissionProfile& p) {
  const auto& t = p.tau_grid;
  const auto& y = p.rate_samples;
  const std::size_t n = t.size();
  const double h = t[1] - t[0];
  double s = y[0] + y[n - 1];
  for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4.0 : 2.0) * y[i];
  return s * h / 3.0;
}

double max_rel(const collective::EmissionProfile& a, const collective::EmissionProfile& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rate_samples.size(); ++i)
    m = std::max(m, std::abs(a.rate_samples[i] - b.rate_samples[i]) / std::abs(b.rate_samples[i]));
  return m;
}

// Pair rates are shared between criteria 9 to 13.
std::map<std::tuple<double, double, double, double>, double> g_pair_cache;

double pair_rate(double alpha, double loss, double eps, double dy) {
  const auto key = std::make_tuple(alpha, loss, eps, dy);
  if (auto it = g_pair_cache.find(key); it != g_pair_cache.end()) return it->second;
  const double v = response::gamma_pair(alpha, CavitySpec::from_detuning(loss, eps), dy).value;
  g_pair_cache[key] = v;
  return v;
}

Eigen::MatrixXd gamma_array(double alpha, double loss, double eps, int n, double d) {
  std::vector<double> pairs(n);
  for (int m = 0; m < n; ++m) pairs[m] = pair_rate(alpha, loss, eps, m * d);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = pairs[std::abs(i - j)];
  return g;
}

// Relative minimum eigenvalue of every array assembled for criteria 9 to 12.
double g_worst_psd = INFINITY;
int g_psd_count = 0;

void record_psd(const Eigen::MatrixXd& g) {
  const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  g_worst_psd = std::min(g_worst_psd, lo / g.diagonal().maxCoeff());
  ++g_psd_count;
}

struct ArraySummaries {
  collective::SuperradianceSummary inertial, rindler;
};

ArraySummaries array_summaries(double alpha, double loss, double eps, int n, double d) {
  const auto g0 = gamma_array(0.0, loss, eps, n, d);
  const auto ga = gamma_array(alpha, loss, eps, n, d);
  record_psd(g0);
  record_psd(ga);
  return {collective::summarize(g0(0, 0), collective::shape_factor(g0), n, M_PI),
          collective::summarize(ga(0, 0), collective::shape_factor(ga), n, M_PI,
                                response::chi_from_gamma(ga(0, 0), alpha))};
}

Verdict dicke_limit() {
  double worst = 0.0;
  for (int n : {2, 5, 20}) {
    const auto rm = lindblad::dicke_matrix(n, 1.0);
    worst = std::max(worst, std::abs(collective::shape_factor(rm) * n - (n - 1)));
  }
  return {worst < 1e-12, fmt("max |muN - (N-1)| = %.3g", worst)};
}

Verdict closed_forms() {
  const auto g = linspace(0.0, 1.5, 1501);
  const double e_ode = max_rel(collective::solve_W_ode(1.0, 0.0, 0.95, 20, M_PI - 1e-3, g),
                               collective::profile_general(1.0, 0.95, 20, M_PI - 1e-3, g));
  const double e_abs = max_rel(collective::profile_with_absorption(1.0, 0.0, 0.95, 20, M_PI - 1e-3, g),
                               collective::profile_general(1.0, 0.95, 20, M_PI - 1e-3, g));
  const double e_sech =
      max_rel(collective::profile_general(1.0, 0.95, 20, M_PI - 1e-6, g), collective::profile_sech(1.0, 0.95, 20, g));
  return {e_ode <= 1e-8 && e_abs <= 1e-12 && e_sech <= 1e-4,
          fmt("ode %.2g, absorption %.2g, sech %.2g", e_ode, e_abs, e_sech)};
}

Verdict photon_conservation() {
  const int n = 20;
  double worst = 0.0;
  const auto g = linspace(0.0, 4.0, 400001);
  for (double theta : {M_PI, M_PI - 1e-3, 2.0}) {
    const double expected = n * (1 - std::cos(theta)) / 2;
    std::vector<double> got{
        collective::total_quanta(1.0, 0.0, 0.95, n, theta),
        collective::total_quanta(1.0, 0.0, 0.0, n, theta),
        simpson(collective::profile_general(1.0, 0.95, n, theta, g)),
        simpson(collective::profile_with_absorption(1.0, std::exp(-20 * M_PI), 0.95, n, theta, g)),
    };
    if (theta < M_PI) got.push_back(simpson(collective::solve_W_ode(1.0, 0.0, 0.95, n, theta, g)));
    else got.push_back(simpson(collective::profile_sech(1.0, 0.95, n, g)));
    for (double v : got) worst = std::max(worst, std::abs(v - expected) / n);
  }
  double oracle = 0.0;
  for (int m : {2, 3, 4}) {
    const auto r = lindblad::evolve(lindblad::dicke_matrix(m, 1.0), 2.5, 0.0, linspace(0.0, 24.0, 4801),
                                    {.keep_states = false});
    oracle = std::max(oracle, std::abs(simpson(r.profile) - m * (1 - std::cos(2.5)) / 2) / m);
  }
  return {worst <= 1e-6 && oracle <= 1e-6, fmt("closed forms %.2g, oracle %.2g per photon", worst, oracle)};
}

Verdict oracle_validation() {
  const auto g = linspace(0.0, 6.0, 1201);
  const auto r2 = lindblad::evolve(lindblad::dicke_matrix(2, 1.0), M_PI, 0.0, g, {.keep_states = false});
  double e2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    e2 = std::max(e2, std::abs(r2.profile.rate_samples[i] - 2 * std::exp(-2 * g[i]) * (1 + 2 * g[i])));
  const auto r4 = lindblad::evolve(lindblad::dicke_matrix(4, 1.0), M_PI, 0.0, linspace(0.0, 2.0, 4001),
                                   {.keep_states = false});
  const double peak = collective::peak_time(r4.profile);
  const double td = collective::burst_times(1.0, 0.75, 4).tau_d;
  const double rel = std::abs(td - peak) / peak;
  return {e2 <= 1e-6 && rel <= 0.35, fmt("N=2 abs err %.2g; N=4 peak %.4f vs tau_d %.4f (%.0f%%)", e2, peak, td,
                                          100 * rel)};
}

Verdict special_functions() {
  double worst = 0.0;
  for (double nu : {5.0, 20.0, 100.0})
    for (double z = 0.2; z <= 3.0 + 1e-12; z += 0.02) {
      const double a = specfun::besselK_im_scaled_quadrature(specfun::BesselOrder(nu), nu * z).value;
      const double b = specfun::besselK_im_scaled_uniform(specfun::BesselOrder(nu), nu * z);
      worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}));
    }
  const double alpha = 1e-3;
  auto f = [](double w) { return std::exp(-0.5 * std::pow((w - 1.0) / 0.1, 2)); };
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-8;
  cfg.abs_tol = 1e-10;
  std::vector<double> br;
  for (double w = 0.2; w <= 1.8 + 1e-12; w += 0.002) br.push_back(w);
  const auto panels = quad::panels_from_breakpoints(0.2, 1.8, br);
  const auto I = quad::integrate([&](double w) { return specfun::rindler_kernel(w, alpha) * f(w); }, panels, cfg);
  const double delta_err = std::abs(I.value - 2 * M_PI) / (2 * M_PI);
  return {worst <= 1e-6 && delta_err <= 0.01,
          fmt("dual-path max rel %.2g; delta limit %.6f vs 2pi (%.2g)", worst, I.value, delta_err)};
}

Verdict fig2_signs() {
  const double alpha = 0.1;
  bool positive = true;
  int changes = 0;
  double prev = specfun::rindler_kernel(0.01, alpha);
  for (int i = 2; i <= 300; ++i) {
    const double w = 0.01 * i;
    const double v = specfun::rindler_kernel(w, alpha);
    if (w > 1.0 && !(v > 0.0)) positive = false;
    if (w < 1.0 && v * prev < 0.0) ++changes;
    prev = v;
  }
  return {positive && changes >= 1, fmt("positive above resonance: %s; sign changes below: %d",
                                        positive ? "yes" : "no", changes)};
}

Verdict fig3a_asymmetry() {
  std::vector<double> supp;
  for (double loss : {1e-4, 1e-6, 1e-8}) supp.push_back(pair_rate(0.0, loss, 1e-6, 0.0) / pair_rate(0.0, loss, -1e-6, 0.0));
  const bool mono = supp[0] < supp[1] && supp[1] < supp[2];
  return {supp[2] >= 100.0 && mono,
          fmt("gamma0(+)/gamma0(-) = %.3g, %.3g, %.3g for 1-R = 1e-4, 1e-6, 1e-8", supp[0], supp[1], supp[2])};
}

Verdict table1() {
  struct Row {
    double alpha, loss, eps, q_target;
  };
  const Row rows[] = {{1e-11, 1e-9, -1e-8, M_PI * 1e9}, {1e-10, 1e-8, -1e-7, M_PI * 1e8}, {1e-9, 1e-7, -1e-6, M_PI * 1e7}};
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    const double ratio = pair_rate(r.alpha, r.loss, r.eps, 0.0) / pair_rate(0.0, r.loss, r.eps, 0.0);
    const double degraded =
        pair_rate(r.alpha, 10 * r.loss, r.eps, 0.0) / pair_rate(0.0, 10 * r.loss, r.eps, 0.0);
    const double q = cavity::quality_factor(CavitySpec::from_detuning(r.loss, r.eps));
    const double qerr = std::abs(q / r.q_target - 1.0);
    ok = ok && ratio >= 2.0 && degraded < 2.0 && qerr <= 1e-3;
    detail += fmt("[%.0e: %.2f/%.2f, Q err %.1g] ", r.alpha, ratio, degraded, qerr);
  }
  return {ok, detail};
}

Verdict fig4_peak() {
  double best = 0.0, at = 0.0;
  for (int k = 0; k <= 16; ++k) {
    const double eps = -std::pow(10.0, -5.0 - 0.25 * k);
    const double r = pair_rate(1e-9, 1e-8, eps, 0.0) / pair_rate(0.0, 1e-8, eps, 0.0);
    if (r > best) best = r, at = eps;
  }
  return {best >= 40.0 && best <= 60.0, fmt("max gamma_a/gamma_0 = %.2f at epsilon = %.3g", best, at)};
}

Verdict fig4c_mu() {
  double worst = 0.0;
  for (double eps : {-5e-6, -2e-6, -1e-6, -5e-7, -2e-7, -1e-7}) {
    const auto s = array_summaries(1e-9, 1e-8, eps, 20, 1.0);
    worst = std::max(worst, std::abs(s.rindler.mu / s.inertial.mu - 1.0));
  }
  return {worst <= 0.01, fmt("max |mu_a/mu_0 - 1| = %.3g over 6 detunings", worst)};
}

Verdict fig3c_resolution() {
  const auto s = array_summaries(1e-9, 1e-8, -1e-6, 20, 1.0);
  const double delay = s.rindler.tau_d / s.inertial.tau_d;
  const double target = s.inertial.gamma_single / s.rindler.gamma_single;
  const double delay_err = std::abs(delay / target - 1.0);
  const auto res = collective::resolvability(s.inertial, s.rindler);
  const auto tau = linspace(0.0, 2.0 * s.inertial.tau_d, 4001);
  const double p0 = collective::peak_time(collective::profile_incoherent(s.inertial.gamma_single, 20, M_PI, tau));
  const double pa = collective::peak_time(collective::profile_incoherent(s.rindler.gamma_single, 20, M_PI, tau));
  const bool incoherent_same = std::abs(p0 - pa) <= std::min(s.inertial.tau_sr, s.rindler.tau_sr);
  return {delay_err <= 0.15 && res.metric > 3.0 && res.resolved && incoherent_same,
          fmt("delay ratio off by %.2g; metric %.3f (needs > 3), resolved %s; incoherent peaks %.3g vs %.3g",
              delay_err, res.metric, res.resolved ? "true" : "false", p0, pa)};
}

Verdict tradeoff() {
  const auto a = array_summaries(1e-5, 1e-5, -1e-4, 20, 1.0);
  const auto b = array_summaries(1e-5, 1e-3, -1e-2, 20, 1.0);
  const auto ra = collective::resolvability(a.inertial, a.rindler);
  const auto rb = collective::resolvability(b.inertial, b.rindler);
  return {ra.resolved && !rb.resolved,
          fmt("Q=pi*1e5: resolved %s (metric %.2f); Q=pi*1e3: resolved %s (metric %.2g)", ra.resolved ? "true" : "false",
              ra.metric, rb.resolved ? "true" : "false", rb.metric)};
}

Verdict psd() {
  return {g_psd_count > 0 && g_worst_psd >= -1e-10,
          fmt("%d matrices, min eigenvalue / max diagonal = %.3g", g_psd_count, g_worst_psd)};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, dicke_limit},      {2, closed_forms},     {3, photon_conservation}, {4, oracle_validation},
      {5, special_functions}, {6, fig2_signs},       {7, fig3a_asymmetry},     {8, table1},
      {9, fig4_peak},        {10, fig4c_mu},        {11, fig3c_resolution},   {12, tradeoff},
      {13, psd},
  };
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s (%.1fs)\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
