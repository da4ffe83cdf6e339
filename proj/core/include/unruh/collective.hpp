#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "unruh/response.hpp"

namespace unruh::collective {

/// Mean-field superradiance figures for one array. Rates in gamma_fr,
/// times in 1/gamma_fr.
struct SuperradianceSummary {
  double gamma_single = 0.0;
  double mu = 0.0;
  double muN = 0.0;
  double tau_d = 0.0;
  double tau_sr = 0.0;
  double peak_rate = 0.0;
  double total_quanta = 0.0;
};

enum class Provenance { kClosedGeneral, kClosedSech, kClosedAbsorption, kOde, kOracle };
std::string_view to_string(Provenance p);

struct EmissionProfile {
  std::vector<double> tau_grid;
  std::vector<double> rate_samples;
  Provenance provenance = Provenance::kClosedGeneral;
};

struct DephasingReport {
  Eigen::VectorXd lamb_shifts;
  double bulk_spread = 0.0;
  double variance = 0.0;
};

/// mu = (gamma N^2)^-1 sum_{i != j} gamma_ij with gamma the mean diagonal.
double shape_factor(const Eigen::MatrixXd& gamma);
double shape_factor(const response::RateMatrix& rm);

struct BurstTimes {
  double tau_d;
  double tau_sr;
};
BurstTimes burst_times(double gamma, double mu, int n_atoms);

/// (gamma / 4 mu)(mu N + 1)^2 sech^2((tau - tau_d) / 2 tau_sr).
EmissionProfile profile_sech(double gamma, double mu, int n_atoms, const std::vector<double>& tau_grid);

/// Mean-field emission from the product state with Bloch angle theta0.
EmissionProfile profile_general(double gamma, double mu, int n_atoms, double theta0,
                                const std::vector<double>& tau_grid);

/// As profile_general with absorption rate chi.
EmissionProfile profile_with_absorption(double gamma, double chi, double mu, int n_atoms, double theta0,
                                        const std::vector<double>& tau_grid);

struct OdeConfig {
  // The state is the excited population, which decays to 0 for chi = 0;
  // a tiny absolute tolerance keeps the tail relatively accurate.
  double abs_tol = 1e-300;
  double rel_tol = 1e-13;
};

/// Integrates dW/dtau numerically and reports Gamma = -dW/dtau.
EmissionProfile solve_W_ode(double gamma, double chi, double mu, int n_atoms, double theta0,
                            const std::vector<double>& tau_grid, const OdeConfig& cfg = {});

/// Trapezoidal integral of the samples.
double integrate_profile(const EmissionProfile& p);

/// Emitted quanta: trapezoidal integration of the closed form on a grid
/// extended until the tail falls below 1e-8.
double total_quanta(double gamma, double chi, double mu, int n_atoms, double theta0);

struct DelayRatio {
  double exact;
  double large_muN;
  // gamma0 / gamma_a
  double asymptotic;
};
DelayRatio delay_ratio(double gamma0, double mu0, double gamma_a, double mu_a, int n_atoms);

/// gamma_a from a measured Rindler delay via tau_d^a / tau_d^0 = gamma0 / gamma_a.
double infer_gamma_from_delay(double gamma0, double tau_d0, double tau_d_a);

struct Resolvability {
  bool resolved;
  double metric;
};
inline constexpr double kDefaultSigma = 2.0;
Resolvability resolvability(const SuperradianceSummary& inertial, const SuperradianceSummary& rindler,
                            double k_sigma = kDefaultSigma);

/// Omega_i = sum_j Omega_ij; spread over the central 60% of sites.
DephasingReport dephasing_report(const Eigen::MatrixXd& omega);
DephasingReport dephasing_report(const response::RateMatrix& rm);

/// gamma tau_d as a function of mu N.
std::vector<double> tau_d_vs_muN(double gamma, const std::vector<double>& muN_grid);

/// mu N at which tau_d peaks: mu N + 1 = mu N (ln mu N + 1).
double tau_d_peak_muN();

SuperradianceSummary summarize(double gamma, double mu, int n_atoms, double theta0, double chi = 0.0);
SuperradianceSummary summarize(const response::RateMatrix& rm, double theta0);

/// Independent-atom profile N gamma e^{-gamma tau} (1 - cos theta0) / 2.
EmissionProfile profile_incoherent(double gamma, int n_atoms, double theta0, const std::vector<double>& tau_grid);

/// Sample time of the largest rate.
double peak_time(const EmissionProfile& p);

}  // namespace unruh::collective
