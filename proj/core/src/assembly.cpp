#include <Eigen/Eigenvalues>
#include <cmath>
#include <thread>
#include <vector>

#include "response_detail.hpp"
#include "unruh/errors.hpp"
#include "unruh/response.hpp"
#include "unruh/specfun.hpp"

namespace unruh::response {
namespace {

// u-integral of rindler_kernel(k cosh u) out to where the panel contributions
// stay below the truncation threshold of their running maximum for three
// consecutive panels past the resonance.
Estimate omega_prime_integral(double k, double alpha, const QuadratureConfig& cfg) {
  auto f = [&](double u) { return specfun::rindler_kernel(k * std::cosh(u), alpha); };
  constexpr double du = 0.25;
  Estimate total;
  double peak = 0.0;
  int quiet = 0;
  for (double u = 0.0; u < 60.0; u += du) {
    const auto piece = quad::integrate(f, u, u + du, cfg);
    total += piece;
    peak = std::max(peak, std::abs(piece.value));
    const bool past_resonance = k * std::cosh(u) > 1.0;
    if (past_resonance && std::abs(piece.value) < cfg.truncation_threshold * peak) {
      if (++quiet == 3) return total;
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("omega' integral did not decay", total.error);
}

}  // namespace

Estimate gamma_pair_direct(double alpha, const cavity::CavitySpec& cavity, double delta_y,
                           const QuadratureConfig& cfg) {
  if (!(alpha >= 0.1)) throw DomainError("direct route is meant for alpha >= 0.1");
  cfg.validate();
  const detail::Geometry g{cavity, 2.0 * M_PI * std::abs(delta_y), 0.0};
  const double nu = 1.0 / alpha;
  const double k_hi = specfun::z_from_airy_variable(nu, -20.0);
  std::vector<double> bp{1.0};
  for (double p : cavity::resonance_breakpoints(cavity, 0.0, k_hi)) bp.push_back(p);
  for (double k = 0.1; k < k_hi; k += 0.1) bp.push_back(k);
  const auto panels = quad::panels_from_breakpoints(1e-5, k_hi, std::move(bp));
  auto f = [&](double k) {
    return k * omega_prime_integral(k, alpha, cfg).value * detail::angular_weight(k, g, cfg).value;
  };
  return (1.0 / (2.0 * M_PI * M_PI)) * quad::integrate(f, panels, cfg);
}

RateMatrix rate_matrix(const Scenario& sc) {
  sc.validate();
  const int n = sc.n_atoms;
  std::vector<Estimate> gam(n), om(n);
  std::vector<std::string> failures(n);
  auto work = [&](int m) {
    try {
      const double dy = m * sc.spacing_d_over_lambda0;
      gam[m] = gamma_pair(sc.alpha, sc.cavity, dy, sc.quad, sc.x_offset_over_lambda0);
      om[m] = omega_pair(sc.alpha, sc.cavity, dy, sc.quad, sc.x_offset_over_lambda0);
    } catch (const std::exception& e) {
      failures[m] = e.what();
    }
  };
  // Separation index m goes to worker m % workers; each entry is computed
  // independently, so the result does not depend on the worker count.
  const int workers = std::min(sc.workers, n);
  if (workers == 1) {
    for (int m = 0; m < n; ++m) work(m);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int m = w; m < n; m += workers) work(m);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (int m = 0; m < n; ++m) {
    if (!failures[m].empty()) {
      throw ConvergenceError("rate_matrix entry |i-j| = " + std::to_string(m) + " failed: " + failures[m], 0.0);
    }
    if (!std::isfinite(gam[m].value) || !std::isfinite(om[m].value)) {
      throw ConvergenceError("rate_matrix entry |i-j| = " + std::to_string(m) + " is not finite", 0.0);
    }
  }

  RateMatrix rm;
  rm.alpha = sc.alpha;
  rm.gamma.resize(n, n);
  rm.omega.resize(n, n);
  rm.gamma_error.resize(n, n);
  rm.omega_error.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int m = std::abs(i - j);
      rm.gamma(i, j) = gam[m].value;
      rm.gamma_error(i, j) = gam[m].error;
      rm.omega(i, j) = om[m].value;
      rm.omega_error(i, j) = om[m].error;
    }
  }
  rm.chi = rm.gamma * chi_from_gamma(1.0, sc.alpha);
  return rm;
}

double gamma_min_eigenvalue(const RateMatrix& rm) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rm.gamma, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool gamma_is_psd(const RateMatrix& rm, double tol) {
  const double scale = rm.gamma.diagonal().cwiseAbs().maxCoeff();
  return gamma_min_eigenvalue(rm) >= -tol * scale;
}

}  // namespace unruh::response
