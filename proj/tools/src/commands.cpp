#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <spdlog/spdlog.h>

#include "unruh/collective.hpp"
#include "unruh/lindblad.hpp"
#include "unruh/response.hpp"

namespace unruh::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

nlohmann::json tolerances_json(const QuadratureConfig& q) {
  return {{"abs_tol", q.abs_tol},
          {"rel_tol", q.rel_tol},
          {"max_subdivisions", q.max_subdivisions},
          {"truncation_threshold", q.truncation_threshold}};
}

nlohmann::json scenario_json(const response::Scenario& sc) {
  return {{"alpha", sc.alpha},
          {"cavity", fig::cavity_json(sc.cavity)},
          {"d_over_lambda0", sc.spacing_d_over_lambda0},
          {"N", sc.n_atoms},
          {"theta0", sc.theta0},
          {"x_offset_over_lambda0", sc.x_offset_over_lambda0}};
}

void finish(const std::vector<Table>& tables, Manifest& m, const CommandContext& ctx, const std::string& key,
            Clock::time_point t0) {
  for (const auto& t : tables) {
    const auto path = t.write(ctx.out_dir);
    spdlog::info("wrote {}", path.string());
    m.tables.push_back(&t);
  }
  m.wall_time_s = seconds_since(t0);
  m.write(ctx.out_dir, key);
}

struct PointResult {
  Estimate g0, ga, ratio;
  double chi_a = 0.0;
  bool arrays = false;
  response::RateMatrix rm0, rma;
  collective::SuperradianceSummary s0, sa;
};

bool wants(const RunConfig& cfg, const std::string& d) {
  return std::find(cfg.datasets.begin(), cfg.datasets.end(), d) != cfg.datasets.end();
}

}  // namespace

void cmd_run(const RunConfig& cfg, const CommandContext& ctx) {
  const auto t0 = Clock::now();
  const auto points = sweep_points(cfg);
  const bool need_arrays = wants(cfg, "summary") || wants(cfg, "profile") || wants(cfg, "lamb_shift");
  spdlog::info("run: {} sweep point(s), datasets {}", points.size(), nlohmann::json(cfg.datasets).dump());

  const int outer = points.size() > 1 ? ctx.workers : 1;
  const auto results = parallel_map<PointResult>(points.size(), outer, [&](std::size_t i) {
    auto sc = scenario_at(cfg, points[i]);
    sc.workers = outer > 1 ? 1 : ctx.workers;
    return guarded("response", scenario_json(sc), [&] {
      PointResult r;
      const auto single = fig::single_rates(sc.alpha, sc.cavity, sc.quad);
      r.g0 = single.gamma0;
      r.ga = single.gamma_a;
      r.ratio = single.ratio;
      r.chi_a = response::chi_from_gamma(r.ga.value, sc.alpha);
      if (need_arrays) {
        auto sc0 = sc;
        sc0.alpha = 0.0;
        r.rm0 = response::rate_matrix(sc0);
        r.rma = sc.alpha > 0.0 ? response::rate_matrix(sc) : r.rm0;
        r.s0 = collective::summarize(r.rm0, sc.theta0);
        r.sa = collective::summarize(r.rma, sc.theta0);
        r.arrays = true;
      }
      return r;
    });
  });

  std::vector<std::string> axes;
  for (const auto& a : cfg.sweep) axes.push_back(a.name);
  auto with_axes = [&](std::vector<std::string> cols) {
    cols.insert(cols.begin(), axes.begin(), axes.end());
    return cols;
  };
  auto row = [&](std::size_t i, std::vector<double> vals) {
    vals.insert(vals.begin(), points[i].begin(), points[i].end());
    return vals;
  };

  std::vector<Table> tables;
  if (wants(cfg, "rates")) {
    Table t("rates", with_axes({"gamma_0", "gamma_0_err", "gamma_a", "gamma_a_err", "gamma_ratio",
                                "gamma_ratio_err", "chi_a"}));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& r = results[i];
      t.row(row(i, {r.g0.value, r.g0.error, r.ga.value, r.ga.error, r.ratio.value, r.ratio.error, r.chi_a}));
    }
    tables.push_back(std::move(t));
  }
  if (wants(cfg, "summary")) {
    Table t("summary", with_axes({"mu_0", "mu_a", "tau_d_0", "tau_d_a", "tau_sr_0", "tau_sr_a", "gamma_ratio",
                                  "separation_metric", "resolved", "psd_min_relative_eigenvalue"}));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& r = results[i];
      const auto res = collective::resolvability(r.s0, r.sa);
      double psd = INFINITY;
      for (const auto* rm : {&r.rm0, &r.rma})
        psd = std::min(psd, response::gamma_min_eigenvalue(*rm) / rm->gamma.diagonal().maxCoeff());
      t.row(row(i, {r.s0.mu, r.sa.mu, r.s0.tau_d, r.sa.tau_d, r.s0.tau_sr, r.sa.tau_sr,
                    r.sa.gamma_single / r.s0.gamma_single, res.metric, res.resolved ? 1.0 : 0.0, psd}));
    }
    tables.push_back(std::move(t));
  }
  if (wants(cfg, "profile")) {
    Table t("profile", with_axes({"tau", "inertial", "rindler"}));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& r = results[i];
      const auto sc = scenario_at(cfg, points[i]);
      const double span = cfg.profile_tau_max > 0.0 ? cfg.profile_tau_max
                                                    : std::max(2.0 * r.s0.tau_d, 5.0 * r.s0.tau_sr);
      std::vector<double> tau;
      for (int k = 0; k < cfg.profile_points; ++k) tau.push_back(span * k / (cfg.profile_points - 1));
      auto prof = [&](const collective::SuperradianceSummary& s, const response::RateMatrix& rm) {
        const double chi = rm.chi.size() ? rm.chi(0, 0) : 0.0;
        return chi > 0.0 ? collective::profile_with_absorption(s.gamma_single, chi, s.mu, sc.n_atoms, sc.theta0, tau)
                         : collective::profile_general(s.gamma_single, s.mu, sc.n_atoms, sc.theta0, tau);
      };
      const auto p0 = prof(r.s0, r.rm0), pa = prof(r.sa, r.rma);
      for (std::size_t k = 0; k < tau.size(); ++k) t.row(row(i, {tau[k], p0.rate_samples[k], pa.rate_samples[k]}));
    }
    tables.push_back(std::move(t));
  }
  if (wants(cfg, "lamb_shift")) {
    Table t("lamb_shift", with_axes({"site", "lamb_shift", "lamb_shift_err", "bulk_spread", "variance"}));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& rm = results[i].rma;
      const auto rep = collective::dephasing_report(rm);
      const Eigen::VectorXd err = rm.omega_error.rowwise().sum();
      for (int s = 0; s < rm.size(); ++s)
        t.row(row(i, {double(s + 1), rep.lamb_shifts(s), err(s), rep.bulk_spread, rep.variance}));
    }
    tables.push_back(std::move(t));
  }

  Manifest m;
  m.command = "run";
  m.inputs = {{"config", cfg.raw}, {"base_scenario", scenario_json(cfg.scenario)}};
  m.tolerances = tolerances_json(cfg.scenario.quad);
  finish(tables, m, ctx, "run", t0);
}

void cmd_benchmark_inertial(const RunConfig& cfg, const CommandContext& ctx) {
  if (cfg.scenario.alpha != 0.0)
    throw ConfigError({"scenario.alpha: benchmark-inertial requires alpha = 0 (got a nonzero value)"});
  if (!cfg.sweep.empty()) throw ConfigError({"sweep: benchmark-inertial takes a single scenario"});
  const auto t0 = Clock::now();
  auto sc = cfg.scenario;
  sc.workers = ctx.workers;
  const auto rm = guarded("response", scenario_json(sc), [&] { return response::rate_matrix(sc); });
  const auto s = collective::summarize(rm, sc.theta0);

  Table t("benchmark_inertial", {"gamma_0", "gamma_0_err", "mu_0", "muN_0", "tau_d_0", "tau_sr_0", "peak_rate",
                                 "total_quanta"});
  t.row({s.gamma_single, rm.gamma_error(0, 0), s.mu, s.muN, s.tau_d, s.tau_sr, s.peak_rate, s.total_quanta});

  Manifest m;
  m.command = "benchmark-inertial";
  m.inputs = {{"config", cfg.raw}, {"scenario", scenario_json(sc)}};
  m.tolerances = tolerances_json(sc.quad);
  m.results = {{"baseline",
                {{"gamma_single", s.gamma_single},
                 {"mu", s.mu},
                 {"muN", s.muN},
                 {"tau_d", s.tau_d},
                 {"tau_sr", s.tau_sr},
                 {"peak_rate", s.peak_rate},
                 {"total_quanta", s.total_quanta}}}};
  if (cfg.measured_tau_d) {
    const double g = collective::infer_gamma_from_delay(s.gamma_single, s.tau_d, *cfg.measured_tau_d);
    m.results["inferred"] = {{"measured_tau_d", *cfg.measured_tau_d},
                             {"gamma_a", g},
                             {"gamma_ratio", g / s.gamma_single}};
    spdlog::info("inferred gamma_a = {:.6g} gamma_fr from tau_d = {:.6g}", g, *cfg.measured_tau_d);
  }
  std::vector<Table> tables;
  tables.push_back(std::move(t));
  finish(tables, m, ctx, "benchmark-inertial", t0);
}

void cmd_oracle(const RunConfig& cfg, const CommandContext& ctx) {
  const auto t0 = Clock::now();
  if (!cfg.sweep.empty()) throw ConfigError({"sweep: oracle takes a single scenario"});
  const auto& sc = cfg.scenario;
  if (sc.n_atoms > lindblad::kMaxAtoms)
    throw ConfigError({"scenario.n_atoms: the oracle supports at most " + std::to_string(lindblad::kMaxAtoms) +
                       " atoms"});
  const auto rm = cfg.oracle_matrix == "dicke"
                      ? lindblad::dicke_matrix(sc.n_atoms, 1.0)
                      : guarded("response", scenario_json(sc), [&] { return response::rate_matrix(sc); });
  std::vector<double> tau;
  for (int k = 0; k < cfg.oracle_points; ++k) tau.push_back(cfg.oracle_tau_max * k / (cfg.oracle_points - 1));

  const auto ev = guarded("lindblad-oracle", {{"N", sc.n_atoms}, {"matrix", cfg.oracle_matrix}},
                          [&] { return lindblad::evolve(rm, sc.theta0, sc.phi0, tau); });
  if (ev.psd_projection > 0.0)
    spdlog::log(ev.psd_projection > 1e-12 ? spdlog::level::warn : spdlog::level::info,
                "oracle: clipped {:.3e} from the rate matrices to make them PSD", ev.psd_projection);
  const auto corr = lindblad::pair_correlators(ev.trajectory);
  const double gamma = rm.gamma.diagonal().mean();
  const double mu = collective::shape_factor(rm);
  const double chi = rm.chi.size() ? rm.chi(0, 0) : 0.0;
  const auto mf = chi > 0.0 ? collective::profile_with_absorption(gamma, chi, mu, sc.n_atoms, sc.theta0, tau)
                            : collective::profile_general(gamma, mu, sc.n_atoms, sc.theta0, tau);

  Table t("oracle", {"tau", "oracle_rate", "mean_field_rate", "decoupling_residual"});
  for (std::size_t k = 0; k < tau.size(); ++k)
    t.row({tau[k], ev.profile.rate_samples[k], mf.rate_samples[k], corr.max_residual[k]});

  Manifest m;
  m.command = "oracle";
  m.inputs = {{"config", cfg.raw}, {"scenario", scenario_json(sc)}, {"matrix", cfg.oracle_matrix}};
  m.tolerances = {{"step_tol", lindblad::StepControl{}.tol}, {"quadrature", tolerances_json(sc.quad)}};
  m.results = {{"psd_projection", ev.psd_projection},
               {"max_trace_error", ev.max_trace_error},
               {"min_state_eigenvalue", ev.min_state_eigenvalue},
               {"steps", ev.steps},
               {"oracle_peak_time", collective::peak_time(ev.profile)},
               {"mean_field_peak_time", collective::peak_time(mf)},
               {"oracle_quanta", collective::integrate_profile(ev.profile)}};
  std::vector<Table> tables;
  tables.push_back(std::move(t));
  finish(tables, m, ctx, "oracle", t0);
}

void cmd_figure(const std::string& id, const CommandContext& ctx) {
  const auto t0 = Clock::now();
  FigureOptions opt{ctx.fast, ctx.workers, {}};
  spdlog::info("figure {}{}", id, ctx.fast ? " (fast)" : "");
  auto ds = make_figure(id, opt);
  Manifest m;
  m.command = "figure " + id;
  m.inputs = ds.inputs;
  m.inputs["fast"] = ctx.fast;
  m.tolerances = tolerances_json(opt.quad);
  m.results = ds.results;
  finish(ds.tables, m, ctx, id, t0);
}

void cmd_table1(const CommandContext& ctx) {
  const auto t0 = Clock::now();
  FigureOptions opt{ctx.fast, ctx.workers, {}};
  auto ds = make_table1(opt);
  for (const auto& r : ds.results["rows"])
    spdlog::info("alpha = {:.0e}: resolved {} (degraded: {})", r["alpha"].get<double>(), r["resolved"].get<bool>(),
                 r["resolved_degraded"].get<bool>());
  Manifest m;
  m.command = "table1";
  m.inputs = ds.inputs;
  m.tolerances = tolerances_json(opt.quad);
  m.results = ds.results;
  finish(ds.tables, m, ctx, "table1", t0);
}

}  // namespace unruh::cli
