#include <cmath>

#include "figures.hpp"
#include "unruh/collective.hpp"
#include "unruh/response.hpp"

namespace unruh::cli {

namespace {

constexpr int kArrayAtoms = 20;

nlohmann::json summary_json(const collective::SuperradianceSummary& s) {
  return {{"gamma_single", s.gamma_single}, {"mu", s.mu},         {"muN", s.muN},
          {"tau_d", s.tau_d},               {"tau_sr", s.tau_sr}, {"peak_rate", s.peak_rate},
          {"total_quanta", s.total_quanta}};
}

double min_eigenvalue(const Eigen::MatrixXd& g) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

struct ArrayPair {
  fig::GammaArray inertial;
  fig::GammaArray rindler;
  collective::SuperradianceSummary s0;
  collective::SuperradianceSummary sa;
};

ArrayPair array_pair(double alpha, const cavity::CavitySpec& cav, int n, double d, const FigureOptions& opt) {
  const nlohmann::json where = {{"alpha", alpha}, {"cavity", fig::cavity_json(cav)}, {"N", n}, {"d", d}};
  return guarded("response", where, [&] {
    ArrayPair p{fig::gamma_array(0.0, cav, n, d, opt), fig::gamma_array(alpha, cav, n, d, opt), {}, {}};
    p.s0 = collective::summarize(p.inertial.gamma(0, 0), collective::shape_factor(p.inertial.gamma), n, M_PI);
    p.sa = collective::summarize(p.rindler.gamma(0, 0), collective::shape_factor(p.rindler.gamma), n, M_PI,
                                 response::chi_from_gamma(p.rindler.gamma(0, 0), alpha));
    return p;
  });
}

nlohmann::json compare_json(const ArrayPair& p) {
  const auto res = collective::resolvability(p.s0, p.sa);
  nlohmann::json j = {{"inertial", summary_json(p.s0)},
                      {"rindler", summary_json(p.sa)},
                      {"gamma_ratio", p.sa.gamma_single / p.s0.gamma_single},
                      {"resolved", res.resolved},
                      {"separation_metric", res.metric},
                      {"k_sigma", collective::kDefaultSigma},
                      {"psd_min_eigenvalue_inertial", min_eigenvalue(p.inertial.gamma)},
                      {"psd_min_eigenvalue_rindler", min_eigenvalue(p.rindler.gamma)}};
  if (p.s0.muN > 1.0 && p.sa.muN > 1.0) {
    const auto dr = collective::delay_ratio(p.s0.gamma_single, p.s0.mu, p.sa.gamma_single, p.sa.mu,
                                            static_cast<int>(std::lround(p.s0.muN / p.s0.mu)));
    j["delay_ratio"] = {{"exact", dr.exact}, {"large_muN", dr.large_muN}, {"asymptotic", dr.asymptotic}};
  }
  return j;
}

}  // namespace

Dataset fig3c(const FigureOptions& opt) {
  const double alpha = 1e-9, loss = 1e-8, eps = -1e-6, d = 1.0;
  const auto cav = cavity::CavitySpec::from_detuning(loss, eps);
  const auto p = array_pair(alpha, cav, kArrayAtoms, d, opt);
  const int n = opt.fast ? 401 : 2001;
  const double tau_max = 2.0 * p.s0.tau_d;
  std::vector<double> tau;
  for (int i = 0; i < n; ++i) tau.push_back(tau_max * i / (n - 1));

  using namespace collective;
  const auto inc0 = profile_incoherent(p.s0.gamma_single, kArrayAtoms, M_PI, tau);
  const auto inca = profile_incoherent(p.sa.gamma_single, kArrayAtoms, M_PI, tau);
  const auto sr0 = profile_general(p.s0.gamma_single, p.s0.mu, kArrayAtoms, M_PI, tau);
  const auto sra = profile_general(p.sa.gamma_single, p.sa.mu, kArrayAtoms, M_PI, tau);

  Dataset ds;
  ds.inputs = {{"alpha", alpha}, {"cavity", fig::cavity_json(cav)}, {"N", kArrayAtoms}, {"d_over_lambda0", d},
               {"theta0", M_PI}};
  Table t("fig3c", {"tau", "inertial_incoherent", "rindler_incoherent", "inertial_superradiant",
                    "rindler_superradiant"});
  for (int i = 0; i < n; ++i)
    t.row({tau[i], inc0.rate_samples[i], inca.rate_samples[i], sr0.rate_samples[i], sra.rate_samples[i]});
  ds.results = compare_json(p);
  ds.results["peak_time_incoherent_inertial"] = peak_time(inc0);
  ds.results["peak_time_incoherent_rindler"] = peak_time(inca);
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset fig4c(const FigureOptions& opt) {
  const double alpha = 1e-9, loss = 1e-8, d = 1.0;
  const auto eps = opt.fast ? std::vector<double>{-1e-6} : std::vector<double>{-5e-6, -2e-6, -1e-6, -5e-7, -2e-7, -1e-7};
  Dataset ds;
  ds.inputs = {{"alpha", alpha}, {"one_minus_R", loss}, {"N", kArrayAtoms}, {"d_over_lambda0", d}, {"epsilon", eps}};
  Table t("fig4c", {"epsilon", "mu_0", "mu_a", "mu_ratio"});
  double worst = 0.0, psd_worst = INFINITY;
  for (double e : eps) {
    const auto p = array_pair(alpha, cavity::CavitySpec::from_detuning(loss, e), kArrayAtoms, d, opt);
    t.row({e, p.s0.mu, p.sa.mu, p.sa.mu / p.s0.mu});
    worst = std::max(worst, std::abs(p.sa.mu / p.s0.mu - 1.0));
    for (const auto* g : {&p.inertial.gamma, &p.rindler.gamma})
      psd_worst = std::min(psd_worst, min_eigenvalue(*g) / g->diagonal().maxCoeff());
  }
  ds.results = {{"max_abs_mu_ratio_minus_one", worst}, {"min_relative_eigenvalue", psd_worst}};
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset fig_dephasing(const FigureOptions& opt, const std::string& id, int n, double d) {
  const double alpha = 1e-5, loss = 1e-5, eps = -1e-4;
  const auto cav = cavity::CavitySpec::from_detuning(loss, eps);
  const auto om = parallel_map<Estimate>(static_cast<std::size_t>(n), opt.workers, [&](std::size_t m) {
    const double dy = static_cast<double>(m) * d;
    return guarded("response", {{"alpha", alpha}, {"d_over_lambda0", dy}},
                   [&] { return response::omega_pair(alpha, cav, dy, opt.quad); });
  });
  Eigen::MatrixXd omega(n, n), err(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      omega(i, j) = om[static_cast<std::size_t>(std::abs(i - j))].value;
      err(i, j) = om[static_cast<std::size_t>(std::abs(i - j))].error;
    }
  const auto rep = collective::dephasing_report(omega);
  const Eigen::VectorXd site_err = err.rowwise().sum();
  Dataset ds;
  ds.inputs = {{"alpha", alpha}, {"cavity", fig::cavity_json(cav)}, {"N", n}, {"d_over_lambda0", d}};
  Table t(id, {"site", "lamb_shift", "lamb_shift_err"});
  for (int i = 0; i < n; ++i) t.row({double(i + 1), rep.lamb_shifts(i), site_err(i)});
  ds.results = {{"bulk_spread", rep.bulk_spread}, {"variance", rep.variance}};
  ds.tables.push_back(std::move(t));
  return ds;
}

Dataset fig_tradeoff(const FigureOptions& opt) {
  const double alpha = 1e-5;
  const std::vector<double> losses{1e-5, 1e-3};
  std::vector<double> eps;
  for (double m : fig::logspace(1e-2, 1e-5, opt.fast ? 4 : 13)) eps.push_back(-m);
  Dataset ds;
  ds.inputs = {{"alpha", alpha}, {"one_minus_R", losses}, {"epsilon", eps}};
  Table t("figS-tradeoff",
          {"one_minus_R", "Q", "epsilon", "gamma_0", "gamma_0_err", "gamma_a", "gamma_a_err"});
  const std::size_t total = losses.size() * eps.size();
  const auto rates = parallel_map<fig::SingleRates>(total, opt.workers, [&](std::size_t k) {
    const double loss = losses[k / eps.size()], e = eps[k % eps.size()];
    return guarded("response", {{"alpha", alpha}, {"one_minus_R", loss}, {"epsilon", e}}, [&] {
      return fig::single_rates(alpha, cavity::CavitySpec::from_detuning(loss, e), opt.quad);
    });
  });
  for (std::size_t k = 0; k < total; ++k) {
    const double loss = losses[k / eps.size()], e = eps[k % eps.size()];
    const double q = cavity::quality_factor(cavity::CavitySpec::from_detuning(loss, e));
    t.row({loss, q, e, rates[k].gamma0.value, rates[k].gamma0.error, rates[k].gamma_a.value,
           rates[k].gamma_a.error});
  }
  // Configurations A and B at the detuning rule of the table1 rows, eps = -10 (1 - R).
  nlohmann::json configs = nlohmann::json::object();
  const char* names[] = {"A", "B"};
  for (std::size_t i = 0; i < losses.size(); ++i) {
    const auto cav = cavity::CavitySpec::from_detuning(losses[i], -10.0 * losses[i]);
    auto j = compare_json(array_pair(alpha, cav, kArrayAtoms, 1.0, opt));
    j["cavity"] = fig::cavity_json(cav);
    configs[names[i]] = j;
  }
  ds.results = {{"configurations", configs}, {"N", kArrayAtoms}, {"d_over_lambda0", 1.0}};
  ds.tables.push_back(std::move(t));
  return ds;
}

}  // namespace unruh::cli
