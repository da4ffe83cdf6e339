#include "figures.hpp"

#include <cmath>

#include "unruh/collective.hpp"
#include "unruh/response.hpp"
#include "unruh/specfun.hpp"

namespace unruh::cli {

// Array figures live in figures_arrays.cpp.
Dataset fig3c(const FigureOptions& opt);
Dataset fig4c(const FigureOptions& opt);
Dataset fig_dephasing(const FigureOptions& opt, const std::string& id, int n, double d);
Dataset fig_tradeoff(const FigureOptions& opt);

namespace fig {

SingleRates single_rates(double alpha, const cavity::CavitySpec& cav, const QuadratureConfig& q) {
  SingleRates s;
  s.gamma0 = response::gamma_pair(0.0, cav, 0.0, q);
  s.gamma_a = alpha > 0.0 ? response::gamma_pair(alpha, cav, 0.0, q) : s.gamma0;
  s.ratio = ratio(s.gamma_a, s.gamma0);
  return s;
}

GammaArray gamma_array(double alpha, const cavity::CavitySpec& cav, int n, double d, const FigureOptions& opt) {
  const auto pairs = parallel_map<Estimate>(static_cast<std::size_t>(n), opt.workers, [&](std::size_t m) {
    return response::gamma_pair(alpha, cav, static_cast<double>(m) * d, opt.quad);
  });
  GammaArray g{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.gamma(i, j) = pairs[static_cast<std::size_t>(std::abs(i - j))].value;
      g.error(i, j) = pairs[static_cast<std::size_t>(std::abs(i - j))].error;
    }
  return g;
}

nlohmann::json cavity_json(const cavity::CavitySpec& cav) {
  if (cav.loss() >= 1.0) return {{"kind", "free"}};
  return {{"kind", "planar"},
          {"one_minus_R", cav.loss()},
          {"omega0_L", cav.width()},
          {"epsilon", cav.detuning()},
          {"Q", cavity::quality_factor(cav)}};
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1)));
  return v;
}

}  // namespace fig

namespace {

using fig::logspace;

Dataset fig2(const FigureOptions& opt) {
  const double alpha = 0.1;
  const int n = opt.fast ? 60 : 300;
  Dataset ds;
  ds.inputs = {{"alpha", alpha}, {"omega_prime_max", 3.0}, {"points", n}};
  Table t("fig2", {"omega_prime", "kernel"});
  t.meta("alpha", format_number(alpha));
  t.meta("kernel", "omega0 times the Rindler spectral response, free space");
  const auto vals = parallel_map<double>(static_cast<std::size_t>(n), opt.workers, [&](std::size_t i) {
    return specfun::rindler_kernel(3.0 * double(i + 1) / n, alpha);
  });
  int sign_changes_below = 0;
  bool positive_above = true;
  for (int i = 0; i < n; ++i) {
    const double w = 3.0 * double(i + 1) / n;
    t.row({w, vals[i]});
    if (w > 1.0 && !(vals[i] > 0.0)) positive_above = false;
    if (i > 0 && w <= 1.0 && (vals[i] > 0.0) != (vals[i - 1] > 0.0)) ++sign_changes_below;
  }
  ds.results = {{"positive_above_resonance", positive_above}, {"sign_changes_below_resonance", sign_changes_below}};
  ds.tables.push_back(std::move(t));
  return ds;
}

std::vector<double> symmetric_eps(bool fast) {
  const auto mags = fast ? std::vector<double>{1e-8, 1e-7, 1e-6, 1e-5} : logspace(1e-9, 1e-5, 9);
  std::vector<double> eps;
  for (auto it = mags.rbegin(); it != mags.rend(); ++it) eps.push_back(-*it);
  for (double m : mags) eps.push_back(m);
  return eps;
}

Dataset fig3a(const FigureOptions& opt) {
  const double alpha = 1e-9, loss = 1e-8;
  const auto eps = symmetric_eps(opt.fast);
  Dataset ds;
  ds.inputs = {{"alpha", alpha}, {"one_minus_R", loss}, {"epsilon", eps}};
  Table t("fig3a", {"epsilon", "gamma_0", "gamma_0_err", "gamma_a", "gamma_a_err"});
  t.meta("alpha", format_number(alpha));
  t.meta("one_minus_R", format_number(loss));
  const auto rates = parallel_map<fig::SingleRates>(eps.size(), opt.workers, [&](std::size_t i) {
    return guarded("response", {{"alpha", alpha}, {"epsilon", eps[i]}, {"one_minus_R", loss}}, [&] {
      return fig::single_rates(alpha, cavity::CavitySpec::from_detuning(loss, eps[i]), opt.quad);
    });
  });
  for (std::size_t i = 0; i < eps.size(); ++i)
    t.row({eps[i], rates[i].gamma0.value, rates[i].gamma0.error, rates[i].gamma_a.value, rates[i].gamma_a.error});
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset fig3b(const FigureOptions& opt) {
  const double loss = 1e-4, eps = -1e-4;
  const std::vector<double> alphas{1e-7, 1e-5};
  const double step = opt.fast ? 0.25 : 0.05;
  std::vector<double> d;
  for (int i = 0; i * step <= 2.0 + 1e-12; ++i) d.push_back(i * step);
  const auto cav = cavity::CavitySpec::from_detuning(loss, eps);
  Dataset ds;
  ds.inputs = {{"alphas", alphas}, {"cavity", fig::cavity_json(cav)}, {"d_over_lambda0", d}};
  Table t("fig3b", {"alpha", "d_over_lambda0", "cooperation", "cooperation_err"});
  t.meta("cooperation", "gamma_ij / gamma_a");
  const std::size_t n = alphas.size() * d.size();
  const auto pairs = parallel_map<Estimate>(n, opt.workers, [&](std::size_t k) {
    const double a = alphas[k / d.size()], dy = d[k % d.size()];
    return guarded("response", {{"alpha", a}, {"d_over_lambda0", dy}},
                   [&] { return response::gamma_pair(a, cav, dy, opt.quad); });
  });
  for (std::size_t k = 0; k < n; ++k) {
    const auto self = pairs[(k / d.size()) * d.size()];
    const auto c = ratio(pairs[k], self);
    t.row({alphas[k / d.size()], d[k % d.size()], c.value, c.error});
  }
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset fig4a(const FigureOptions& opt) {
  const double alpha = 1e-9;
  const auto losses = opt.fast ? std::vector<double>{1e-8} : std::vector<double>{1e-6, 1e-7, 1e-8};
  std::vector<double> eps;
  if (opt.fast) {
    eps = {-3e-6, -1e-6, -1e-7};
  } else {
    for (double m : logspace(1e-5, 1e-9, 17)) eps.push_back(-m);
  }
  Dataset ds;
  ds.inputs = {{"alpha", alpha}, {"one_minus_R", losses}, {"epsilon", eps}};
  Table t("fig4a", {"epsilon", "R", "one_minus_R", "gamma_ratio", "gamma_ratio_err"});
  t.meta("alpha", format_number(alpha));
  const std::size_t n = losses.size() * eps.size();
  const auto rates = parallel_map<fig::SingleRates>(n, opt.workers, [&](std::size_t k) {
    const double loss = losses[k / eps.size()], e = eps[k % eps.size()];
    return guarded("response", {{"alpha", alpha}, {"epsilon", e}, {"one_minus_R", loss}}, [&] {
      return fig::single_rates(alpha, cavity::CavitySpec::from_detuning(loss, e), opt.quad);
    });
  });
  nlohmann::json peaks = nlohmann::json::object();
  for (std::size_t k = 0; k < n; ++k) {
    const double loss = losses[k / eps.size()];
    t.row({eps[k % eps.size()], 1.0 - loss, loss, rates[k].ratio.value, rates[k].ratio.error});
    const auto key = format_number(loss);
    if (!peaks.contains(key) || peaks[key].get<double>() < rates[k].ratio.value) peaks[key] = rates[k].ratio.value;
  }
  ds.results = {{"max_gamma_ratio_by_one_minus_R", peaks}};
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset fig4b(const FigureOptions& opt) {
  const double alpha = 1e-9;
  const std::vector<double> eps{-1e-6, -1e-7};
  const auto losses = opt.fast ? std::vector<double>{1e-5, 1e-7, 1e-9} : logspace(1e-4, 1e-9, 11);
  Dataset ds;
  ds.inputs = {{"alpha", alpha}, {"epsilon", eps}, {"one_minus_R", losses}};
  Table t("fig4b", {"epsilon", "one_minus_R", "Q", "gamma_ratio", "gamma_ratio_err"});
  t.meta("alpha", format_number(alpha));
  const std::size_t n = losses.size() * eps.size();
  const auto rates = parallel_map<fig::SingleRates>(n, opt.workers, [&](std::size_t k) {
    const double e = eps[k / losses.size()], loss = losses[k % losses.size()];
    return guarded("response", {{"alpha", alpha}, {"epsilon", e}, {"one_minus_R", loss}}, [&] {
      return fig::single_rates(alpha, cavity::CavitySpec::from_detuning(loss, e), opt.quad);
    });
  });
  for (std::size_t k = 0; k < n; ++k) {
    const double e = eps[k / losses.size()], loss = losses[k % losses.size()];
    const double q = cavity::quality_factor(cavity::CavitySpec::from_detuning(loss, e));
    t.row({e, loss, q, rates[k].ratio.value, rates[k].ratio.error});
  }
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset figS1a(const FigureOptions& opt) {
  const std::vector<double> Rs{0.0, 0.3, 0.6, 0.9};
  const int n = opt.fast ? 121 : 601;
  Dataset ds;
  ds.inputs = {{"R", Rs}, {"kxL_over_pi_max", 3.0}, {"points", n}};
  Table t("figS1a", {"R", "kxL_over_pi", "rho"});
  for (double R : Rs)
    for (int i = 0; i < n; ++i) {
      const double x = 3.0 * i / (n - 1);
      t.row({R, x, cavity::mode_density(M_PI * x, R)});
    }
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset figS1b(const FigureOptions& opt) {
  const std::vector<double> losses{0.5, 0.1, 0.01};
  const int n = opt.fast ? 30 : 150;
  std::vector<double> w;
  for (int i = 0; i < n; ++i) w.push_back(0.1 + 2.9 * i / (n - 1));
  Dataset ds;
  ds.inputs = {{"one_minus_R", losses}, {"omega0L_over_pi", w}};
  Table t("figS1b", {"R", "omega0L_over_pi", "gamma_0", "gamma_0_err"});
  const std::size_t total = losses.size() * w.size();
  const auto g = parallel_map<Estimate>(total, opt.workers, [&](std::size_t k) {
    const double loss = losses[k / w.size()], x = w[k % w.size()];
    return guarded("response", {{"one_minus_R", loss}, {"omega0L_over_pi", x}}, [&] {
      return response::gamma_pair(0.0, cavity::CavitySpec::from_loss(loss, M_PI * x), 0.0, opt.quad);
    });
  });
  for (std::size_t k = 0; k < total; ++k)
    t.row({1.0 - losses[k / w.size()], w[k % w.size()], g[k].value, g[k].error});
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset figS_td_vs_muN(const FigureOptions& opt) {
  const auto grid = logspace(1.01, 1000.0, opt.fast ? 60 : 400);
  Dataset ds;
  ds.inputs = {{"muN_min", grid.front()}, {"muN_max", grid.back()}, {"points", grid.size()}};
  Table t("figS-td-vs-muN", {"muN", "gamma_tau_d"});
  const auto td = collective::tau_d_vs_muN(1.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) t.row({grid[i], td[i]});
  const double m = collective::tau_d_peak_muN();
  ds.results = {{"peak_muN", m}, {"peak_gamma_tau_d", std::log(m) / (m + 1.0)}};
  ds.tables.push_back(std::move(t));
  return ds;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {
      "fig2",   "fig3a",  "fig3b",          "fig3c",           "fig4a",           "fig4b",
      "fig4c",  "figS1a", "figS1b",         "figS-dephasing50", "figS-tradeoff", "figS-dephasing01",
      "figS-td-vs-muN"};
  return ids;
}

bool is_figure_id(const std::string& id) {
  const auto& ids = figure_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

Dataset make_figure(const std::string& id, const FigureOptions& opt) {
  if (id == "fig2") return fig2(opt);
  if (id == "fig3a") return fig3a(opt);
  if (id == "fig3b") return fig3b(opt);
  if (id == "fig3c") return fig3c(opt);
  if (id == "fig4a") return fig4a(opt);
  if (id == "fig4b") return fig4b(opt);
  if (id == "fig4c") return fig4c(opt);
  if (id == "figS1a") return figS1a(opt);
  if (id == "figS1b") return figS1b(opt);
  if (id == "figS-dephasing50") return fig_dephasing(opt, id, opt.fast ? 30 : 50, 1.0);
  if (id == "figS-tradeoff") return fig_tradeoff(opt);
  if (id == "figS-dephasing01") return fig_dephasing(opt, id, 20, 0.1);
  if (id == "figS-td-vs-muN") return figS_td_vs_muN(opt);
  throw std::invalid_argument("unknown figure id '" + id + "'");
}

Dataset make_table1(const FigureOptions& opt) {
  struct Row {
    double alpha, loss, eps;
    double q_target;
  };
  const std::vector<Row> rows{{1e-11, 1e-9, -1e-8, M_PI * 1e9},
                              {1e-10, 1e-8, -1e-7, M_PI * 1e8},
                              {1e-9, 1e-7, -1e-6, M_PI * 1e7}};
  Dataset ds;
  Table t("table1", {"alpha", "one_minus_R_min", "omega0L", "Q_computed", "Q_target", "gamma_ratio",
                     "gamma_ratio_err", "resolved", "gamma_ratio_degraded", "gamma_ratio_degraded_err",
                     "resolved_degraded"});
  t.meta("resolved", "1 when gamma_a / gamma_0 >= 2");
  t.meta("degraded", "1 - R multiplied by 10 at the same omega0 L");
  const auto rates = parallel_map<fig::SingleRates>(2 * rows.size(), opt.workers, [&](std::size_t k) {
    const auto& r = rows[k / 2];
    const double loss = k % 2 ? 10.0 * r.loss : r.loss;
    return guarded("response", {{"alpha", r.alpha}, {"one_minus_R", loss}, {"epsilon", r.eps}}, [&] {
      return fig::single_rates(r.alpha, cavity::CavitySpec::from_detuning(loss, r.eps), opt.quad);
    });
  });
  nlohmann::json verdicts = nlohmann::json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto cav = cavity::CavitySpec::from_detuning(r.loss, r.eps);
    const double q = cavity::quality_factor(cav);
    const auto& a = rates[2 * i].ratio;
    const auto& b = rates[2 * i + 1].ratio;
    const bool ok = a.value >= 2.0, ok_deg = b.value >= 2.0;
    t.row({r.alpha, r.loss, cav.width(), q, r.q_target, a.value, a.error, ok ? 1.0 : 0.0, b.value, b.error,
           ok_deg ? 1.0 : 0.0});
    verdicts.push_back({{"alpha", r.alpha},
                        {"resolved", ok},
                        {"resolved_degraded", ok_deg},
                        {"Q_relative_mismatch", std::abs(q / r.q_target - 1.0)}});
  }
  ds.inputs = {{"rows", "(alpha, 1 - R_min, omega0 L = pi + epsilon) as tabulated"}};
  ds.results = {{"rows", verdicts}};
  ds.tables.push_back(std::move(t));
  return ds;
}

}  // namespace unruh::cli
