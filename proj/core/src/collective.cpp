#include "unruh/collective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "unruh/errors.hpp"

namespace unruh::collective {

namespace {

void require_atoms(int n) {
  if (n < 1) throw DomainError("collective: n_atoms must be >= 1");
}

void require_rate(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("collective: gamma must be positive and finite");
}

void require_theta(double theta0) {
  if (!(theta0 > 0.0 && theta0 <= M_PI)) throw DomainError("collective: theta0 must lie in (0, pi]");
}

// 1 - cos and 1 + cos without cancellation.
double one_minus_cos(double t) { return 2.0 * std::pow(std::sin(0.5 * t), 2); }
double one_plus_cos(double t) { return 2.0 * std::pow(std::cos(0.5 * t), 2); }

constexpr double kThetaNearPi = M_PI - 1e-6;

double general_rate(double gamma, double m, double N, double theta0, double tau) {
  const double a = one_minus_cos(theta0), b = one_plus_cos(theta0);
  const double x = gamma * (m + 1.0) * tau;
  const double lead = gamma * a * N * (m + 1.0) * (m + 1.0) * (b * m + 2.0);
  if (x > 0.0) {
    const double e = std::exp(-x);
    const double d = (m * b + 2.0) + a * m * e;
    return lead * e / (d * d);
  }
  const double e = std::exp(x);
  const double d = (m * b + 2.0) * e + a * m;
  return lead * e / (d * d);
}

double absorption_rate(double gamma, double chi, double m, double N, double theta0, double tau) {
  const double c = std::cos(theta0);
  const double w = 4.0 * chi * gamma + (chi - gamma) * (chi - gamma) * (m + 1.0) * (m + 1.0);
  const double s = std::sqrt(w);
  const double B = chi + gamma - m * (chi - gamma) * c;
  const double sin_t = std::sin(theta0);
  const double P = 4.0 * chi * one_plus_cos(theta0) - 4.0 * gamma * one_minus_cos(theta0) +
                   2.0 * m * (chi - gamma) * sin_t * sin_t;
  const double x = s * tau;
  if (x > 0.0) {
    const double e = std::exp(-x);
    const double d = (s - B) * e + B + s;
    return -N * w * P * e / (2.0 * d * d);
  }
  const double e = std::exp(x);
  const double d = -B + e * (B + s) + s;
  return -N * w * P * e / (2.0 * d * d);
}

void check_grid(const std::vector<double>& tau) {
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1])) throw DomainError("collective: tau grid must be strictly increasing");
}

template <class F>
EmissionProfile sample(const std::vector<double>& tau, Provenance prov, F&& f) {
  check_grid(tau);
  EmissionProfile p{tau, {}, prov};
  p.rate_samples.reserve(tau.size());
  for (double t : tau) p.rate_samples.push_back(f(t));
  return p;
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kClosedGeneral: return "closed-general";
    case Provenance::kClosedSech: return "closed-sech";
    case Provenance::kClosedAbsorption: return "closed-absorption";
    case Provenance::kOde: return "ode";
    case Provenance::kOracle: return "oracle";
  }
  return "unknown";
}

double shape_factor(const Eigen::MatrixXd& gamma) {
  const auto N = gamma.rows();
  if (N < 1 || gamma.cols() != N) throw DomainError("shape_factor: need a square matrix with N >= 1");
  if (N == 1) return 0.0;
  const double g = gamma.diagonal().mean();
  require_rate(g);
  const double off = gamma.sum() - gamma.diagonal().sum();
  return off / (g * static_cast<double>(N * N));
}

double shape_factor(const response::RateMatrix& rm) { return shape_factor(rm.gamma); }

BurstTimes burst_times(double gamma, double mu, int n_atoms) {
  require_rate(gamma);
  require_atoms(n_atoms);
  if (!(mu > 0.0)) throw DomainError("burst_times: mu must be positive");
  const double m = mu * n_atoms;
  return {std::log(m) / (gamma * (m + 1.0)), 1.0 / (gamma * (m + 1.0))};
}

EmissionProfile profile_sech(double gamma, double mu, int n_atoms, const std::vector<double>& tau_grid) {
  const auto [td, tsr] = burst_times(gamma, mu, n_atoms);
  const double m = mu * n_atoms;
  const double peak = gamma * (m + 1.0) * (m + 1.0) / (4.0 * mu);
  return sample(tau_grid, Provenance::kClosedSech, [&](double t) {
    const double s = 1.0 / std::cosh((t - td) / (2.0 * tsr));
    return peak * s * s;
  });
}

EmissionProfile profile_general(double gamma, double mu, int n_atoms, double theta0,
                                const std::vector<double>& tau_grid) {
  require_rate(gamma);
  require_atoms(n_atoms);
  require_theta(theta0);
  if (mu < 0.0) throw DomainError("profile_general: mu must be >= 0");
  if (theta0 == M_PI) {
    if (mu > 0.0) return profile_sech(gamma, mu, n_atoms, tau_grid);
    theta0 = kThetaNearPi;
  }
  const double m = mu * n_atoms, N = n_atoms;
  return sample(tau_grid, Provenance::kClosedGeneral,
                [&](double t) { return general_rate(gamma, m, N, theta0, t); });
}

EmissionProfile profile_with_absorption(double gamma, double chi, double mu, int n_atoms, double theta0,
                                        const std::vector<double>& tau_grid) {
  require_rate(gamma);
  require_atoms(n_atoms);
  require_theta(theta0);
  if (chi < 0.0) throw DomainError("profile_with_absorption: chi must be >= 0");
  if (mu < 0.0) throw DomainError("profile_with_absorption: mu must be >= 0");
  const double m = mu * n_atoms, N = n_atoms;
  return sample(tau_grid, Provenance::kClosedAbsorption,
                [&](double t) { return absorption_rate(gamma, chi, m, N, theta0, t); });
}

EmissionProfile solve_W_ode(double gamma, double chi, double mu, int n_atoms, double theta0,
                            const std::vector<double>& tau_grid, const OdeConfig& cfg) {
  require_rate(gamma);
  require_atoms(n_atoms);
  require_theta(theta0);
  if (chi < 0.0 || mu < 0.0) throw DomainError("solve_W_ode: chi and mu must be >= 0");
  check_grid(tau_grid);
  if (tau_grid.empty()) return {{}, {}, Provenance::kOde};

  // Integrated in u = W + N/2, the excited population, so the decaying tail
  // keeps its relative accuracy.
  const double N = n_atoms;
  using State = std::array<double, 1>;
  auto rate = [&](double u) {
    const double pair = mu * u * (N - u);
    return gamma * (pair + u) - chi * (pair + N - u);
  };
  auto rhs = [&](const State& s, State& ds, double) { ds[0] = -rate(s[0]); };

  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol, odeint::runge_kutta_dopri5<State>());
  State u{N * one_minus_cos(theta0) / 2.0};
  EmissionProfile p{tau_grid, {}, Provenance::kOde};
  p.rate_samples.reserve(tau_grid.size());
  const double t0 = std::min(0.0, tau_grid.front());
  std::vector<double> times{t0};
  times.insert(times.end(), tau_grid.begin(), tau_grid.end());
  if (times.size() > 1 && times[1] == t0) times.erase(times.begin());
  const double h0 = 1e-3 / (gamma * (mu * N + 1.0));
  try {
    odeint::integrate_times(
        stepper, rhs, u, times.begin(), times.end(), h0,
        [&](const State& s, double t) {
          if (t >= tau_grid.front()) p.rate_samples.push_back(rate(s[0]));
        },
        odeint::max_step_checker(1000000));
  } catch (const std::runtime_error& e) {
    throw ConvergenceError(std::string("solve_W_ode: ") + e.what(), NAN);
  }
  if (p.rate_samples.size() != tau_grid.size()) throw ConvergenceError("solve_W_ode: step size underflow", NAN);
  return p;
}

double integrate_profile(const EmissionProfile& p) {
  double s = 0.0;
  for (std::size_t i = 1; i < p.tau_grid.size(); ++i)
    s += 0.5 * (p.tau_grid[i] - p.tau_grid[i - 1]) * (p.rate_samples[i] + p.rate_samples[i - 1]);
  return s;
}

double total_quanta(double gamma, double chi, double mu, int n_atoms, double theta0) {
  require_rate(gamma);
  require_atoms(n_atoms);
  require_theta(theta0);
  const double m = mu * n_atoms, N = n_atoms;
  const double th = theta0 == M_PI ? kThetaNearPi : theta0;
  auto f = [&](double t) {
    return chi > 0.0 ? absorption_rate(gamma, chi, m, N, th, t) : general_rate(gamma, m, N, th, t);
  };
  const double tsr = 1.0 / (gamma * (m + 1.0));
  const double h = tsr / 1000.0;
  const double t_burst = m > 1.0 ? std::log(m) * tsr : 0.0;
  constexpr int kChunk = 10000;  // ten tau_sr
  double total = 0.0, t = 0.0, prev = f(0.0);
  for (int chunk = 0; chunk < 100000; ++chunk) {
    double part = 0.0;
    for (int i = 1; i <= kChunk; ++i) {
      const double v = f(t + i * h);
      part += 0.5 * h * (prev + v);
      prev = v;
    }
    t += kChunk * h;
    total += part;
    if (t > t_burst && std::abs(part) < 1e-8) return total;
  }
  throw ConvergenceError("total_quanta: profile tail does not decay", NAN);
}

DelayRatio delay_ratio(double gamma0, double mu0, double gamma_a, double mu_a, int n_atoms) {
  require_rate(gamma0);
  require_rate(gamma_a);
  require_atoms(n_atoms);
  const double m0 = mu0 * n_atoms, ma = mu_a * n_atoms;
  if (!(m0 > 1.0 && ma > 1.0)) throw DomainError("delay_ratio: both mu N must exceed 1");
  const double logs = std::log(ma) / std::log(m0);
  return {gamma0 * (m0 + 1.0) * logs / (gamma_a * (ma + 1.0)), gamma0 * m0 * logs / (gamma_a * ma),
          gamma0 / gamma_a};
}

double infer_gamma_from_delay(double gamma0, double tau_d0, double tau_d_a) {
  require_rate(gamma0);
  if (!(tau_d0 > 0.0 && tau_d_a > 0.0)) throw DomainError("infer_gamma_from_delay: delays must be positive");
  return gamma0 * tau_d0 / tau_d_a;
}

Resolvability resolvability(const SuperradianceSummary& inertial, const SuperradianceSummary& rindler,
                            double k_sigma) {
  if (!(k_sigma >= 0.0)) throw DomainError("resolvability: k_sigma must be >= 0");
  const double sep = inertial.tau_d - rindler.tau_d;
  const double width = inertial.tau_sr + rindler.tau_sr;
  const double metric = sep / width;
  const bool gated = rindler.gamma_single >= 2.0 * inertial.gamma_single;
  return {gated && sep > k_sigma * width, metric};
}

DephasingReport dephasing_report(const Eigen::MatrixXd& omega) {
  const auto N = omega.rows();
  if (N < 1 || omega.cols() != N) throw DomainError("dephasing_report: need a square matrix");
  DephasingReport r;
  r.lamb_shifts = omega.rowwise().sum();
  const Eigen::Index lo = N >= 3 ? N / 5 : 0;
  const auto bulk = r.lamb_shifts.segment(lo, N - 2 * lo);
  r.bulk_spread = bulk.maxCoeff() - bulk.minCoeff();
  const double mean = r.lamb_shifts.mean();
  r.variance = (r.lamb_shifts.array() - mean).square().mean();
  return r;
}

DephasingReport dephasing_report(const response::RateMatrix& rm) { return dephasing_report(rm.omega); }

std::vector<double> tau_d_vs_muN(double gamma, const std::vector<double>& muN_grid) {
  require_rate(gamma);
  std::vector<double> out;
  out.reserve(muN_grid.size());
  for (double m : muN_grid) {
    if (!(m > 1.0)) throw DomainError("tau_d_vs_muN: mu N must exceed 1");
    out.push_back(std::log(m) / (gamma * (m + 1.0)));
  }
  return out;
}

double tau_d_peak_muN() {
  // d/dm [ln m / (m + 1)] = 0.
  auto f = [](double m) { return m * std::log(m) - m - 1.0; };
  std::uintmax_t iters = 100;
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, 2.0, 6.0, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (a + b);
}

SuperradianceSummary summarize(double gamma, double mu, int n_atoms, double theta0, double chi) {
  require_rate(gamma);
  require_atoms(n_atoms);
  SuperradianceSummary s;
  s.gamma_single = gamma;
  s.mu = mu;
  s.muN = mu * n_atoms;
  s.tau_sr = 1.0 / (gamma * (s.muN + 1.0));
  if (mu > 0.0) {
    s.tau_d = std::log(s.muN) * s.tau_sr;
    s.peak_rate = gamma * (s.muN + 1.0) * (s.muN + 1.0) / (4.0 * mu);
  } else {
    s.peak_rate = gamma * n_atoms * one_minus_cos(theta0) / 2.0;
  }
  s.total_quanta = total_quanta(gamma, chi, mu, n_atoms, theta0);
  return s;
}

SuperradianceSummary summarize(const response::RateMatrix& rm, double theta0) {
  const double gamma = rm.gamma.diagonal().mean();
  const double chi = rm.chi.size() ? rm.chi.diagonal().mean() : 0.0;
  return summarize(gamma, shape_factor(rm), rm.size(), theta0, chi);
}

EmissionProfile profile_incoherent(double gamma, int n_atoms, double theta0, const std::vector<double>& tau_grid) {
  return profile_general(gamma, 0.0, n_atoms, theta0, tau_grid);
}

double peak_time(const EmissionProfile& p) {
  if (p.rate_samples.empty()) throw DomainError("peak_time: empty profile");
  const auto it = std::max_element(p.rate_samples.begin(), p.rate_samples.end());
  return p.tau_grid[static_cast<std::size_t>(it - p.rate_samples.begin())];
}

}  // namespace unruh::collective
