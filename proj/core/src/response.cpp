#include "unruh/response.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "response_detail.hpp"
#include "unruh/errors.hpp"
#include "specfun_detail.hpp"
#include "unruh/specfun.hpp"

namespace unruh::response {
namespace {

using detail::Geometry;

// Above this order the uniform expansion is used inside the rate engine;
// it agrees with the quadrature path to ~1e-13 there and is much cheaper.
constexpr double kEngineUniformOrder = 20.0;
// Orders above which the k < 1 oscillation of the kernels is replaced by its
// local average beyond the window in the Airy variable.
constexpr double kWindowedOrder = specfun::kUniformPathThreshold;
constexpr double kGammaTailT = -20.0;
constexpr double kOmegaTailT = -200.0;

QuadratureConfig bessel_config() {
  QuadratureConfig c;
  c.abs_tol = 1e-14;
  c.rel_tol = 1e-13;
  return c;
}

// Absolute target for an additive correction, relative to the base value.
QuadratureConfig correction_config(const QuadratureConfig& cfg, const Estimate& base) {
  QuadratureConfig c = cfg;
  c.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(base.value));
  return c;
}

// Kernels at k with gap = 1 - k (signed), which is exact next to k = 1.
double scaled_K(double nu, double k, double gap) {
  if (nu >= kEngineUniformOrder) return specfun::detail::besselK_uniform(nu, k, gap);
  static const QuadratureConfig cfg = bessel_config();
  return specfun::besselK_im_scaled_quadrature(specfun::BesselOrder(nu), nu * k, cfg).value;
}

double KI_product(double nu, double k, double gap) {
  if (nu >= kEngineUniformOrder) return specfun::detail::KI_product_uniform(nu, k, gap);
  return specfun::besselKI_product_scaled(specfun::BesselOrder(nu), nu * k);
}

// nu K~(nu, nu k)^2 / pi minus the inertial 1/sqrt(1-k^2), averaged over the
// Airy oscillation where the window has switched off.
double gamma_excess(double nu, double k, double gap, bool windowed) {
  if (gap <= 0.0) {
    const double K = scaled_K(nu, k, gap);
    return nu * K * K / M_PI;
  }
  const double inertial = 1.0 / std::sqrt(gap * (2.0 - gap));
  if (!windowed) {
    const double K = scaled_K(nu, k, gap);
    return nu * K * K / M_PI - inertial;
  }
  const double w = detail::window(specfun::detail::airy_variable(nu, k, gap));
  const double avg = specfun::detail::K_squared_average(nu, k, gap);
  if (w == 0.0) return avg - inertial;
  const double K = scaled_K(nu, k, gap);
  return w * (nu * K * K / M_PI - avg) + (avg - inertial);
}

// nu K~ I~ minus its inertial counterpart Theta(k-1)/sqrt(k^2-1); the k < 1
// oscillation has zero local mean.
double omega_excess(double nu, double k, double gap, bool windowed) {
  if (gap > 0.0) {
    const double w = windowed ? detail::window(specfun::detail::airy_variable(nu, k, gap)) : 1.0;
    if (w == 0.0) return 0.0;
    return w * KI_product(nu, k, gap);
  }
  return KI_product(nu, k, gap) - 1.0 / std::sqrt(-gap * (2.0 - gap));
}

struct KGrid {
  std::vector<double> points;
  double k_lo;
  double k_hi;
};

// Breakpoints in k from a ladder in the Airy variable: one per half
// oscillation on the t > 0 side, doubling steps on the t < 0 side.
KGrid k_grid(double nu, bool windowed, double t_min) {
  KGrid grid;
  // Without the window the kernels oscillate like cos(2 nu log k) as k -> 0;
  // the floor keeps that to ~300 oscillations. The part below it is O(k_lo^2).
  grid.k_lo = windowed ? 0.0 : std::clamp(2.0 * std::exp(-1000.0 / nu), 1e-12, 1e-5);
  grid.k_hi = specfun::z_from_airy_variable(nu, t_min);
  const double t_max = windowed ? detail::kWindowEnd : specfun::airy_variable(nu, grid.k_lo);
  std::vector<double> t_points{0.25, 0.5, 1.0, 2.0};
  for (int m = 1;; ++m) {
    const double t = std::pow(0.75 * m * M_PI, 2.0 / 3.0);
    if (t >= t_max) break;
    t_points.push_back(t);
  }
  for (double t = -0.25; t > t_min; t *= 2.0) t_points.push_back(t);
  for (double t : t_points) grid.points.push_back(specfun::z_from_airy_variable(nu, t));
  if (windowed) {
    // The smooth remainder still varies on the Airy scale next to k = 1.
    const double t_far = specfun::airy_variable(nu, 0.5);
    for (double t = 2.0 * t_max; t < t_far; t *= 2.0) grid.points.push_back(specfun::z_from_airy_variable(nu, t));
    for (double k : {0.5, 0.25, 0.1, 0.01}) grid.points.push_back(k);
  }
  return grid;
}

// Integral of f(node, 1 - k) over the grid, split at k = 1 where the
// inertial subtraction has its inverse square root.
using KIntegrand = std::function<double(const detail::AxisNode&, double)>;

Estimate integrate_k(const KIntegrand& f, const KGrid& grid, const Geometry& g, const QuadratureConfig& cfg) {
  QuadratureConfig half = cfg;
  half.abs_tol = 0.5 * cfg.abs_tol;
  const auto lo = cavity::mode_point(grid.k_lo, g.cavity);
  const auto one = cavity::mode_point(1.0, g.cavity);
  const auto hi = cavity::mode_point(grid.k_hi, g.cavity);
  auto below = [&](const detail::AxisNode& n) { return f(n, n.gap); };
  auto above = [&](const detail::AxisNode& n) { return f(n, -n.gap); };
  return detail::integrate_axis(below, lo, one, detail::Anchor::kUpper, grid.points, g, half) +
         detail::integrate_axis(above, one, hi, detail::Anchor::kLower, grid.points, g, half);
}

[[noreturn]] void rethrow_with_context(const ConvergenceError& e, const std::string& where) {
  throw ConvergenceError(where + ": " + e.what(), e.achieved_error());
}

void check_inputs(double alpha, double delta_y) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be finite and >= 0");
  if (!std::isfinite(delta_y)) throw DomainError("separation must be finite");
}

}  // namespace

void Scenario::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be finite and >= 0");
  if (n_atoms < 1) throw DomainError("n_atoms must be >= 1");
  if (!(theta0 > 0.0 && theta0 <= M_PI)) throw DomainError("theta0 must lie in (0, pi]");
  if (!(spacing_d_over_lambda0 > 0.0) || !std::isfinite(spacing_d_over_lambda0))
    throw DomainError("spacing must be positive");
  if (!std::isfinite(phi0)) throw DomainError("phi0 must be finite");
  if (!(std::abs(2.0 * M_PI * x_offset_over_lambda0) <= 0.5 * cavity.width()))
    throw DomainError("x offset must lie inside the cavity");
  if (workers < 1) throw DomainError("workers must be >= 1");
  quad.validate();
}

double gamma_free_inertial() { return 1.0 / (4.0 * M_PI); }

Estimate gamma_free_inertial_quadrature(const QuadratureConfig& cfg) {
  // k = sin(th) removes the edge singularity: int_0^1 k / sqrt(1-k^2) dk.
  auto f = [](double th) { return std::sin(th); };
  const auto radial = quad::integrate(f, 0.0, 0.5 * M_PI, cfg);
  return (M_PI * 2.0 * M_PI / std::pow(2.0 * M_PI, 3)) * radial;
}

Estimate gamma_pair(double alpha, const cavity::CavitySpec& cavity, double delta_y, const QuadratureConfig& cfg,
                    double x_offset) {
  check_inputs(alpha, delta_y);
  cfg.validate();
  const Geometry g{cavity, 2.0 * M_PI * std::abs(delta_y), 2.0 * M_PI * x_offset};
  Estimate inertial;
  try {
    inertial = detail::inertial_gamma(g, cfg);
  } catch (const ConvergenceError& e) {
    rethrow_with_context(e, "gamma_pair inertial k_x integral");
  }
  if (alpha == 0.0) return inertial;

  const double nu = 1.0 / alpha;
  const bool windowed = nu > kWindowedOrder;
  const auto grid = k_grid(nu, windowed, kGammaTailT);
  const auto inner_cfg = cfg.tightened(0.01);
  auto f = [&](const detail::AxisNode& n, double gap) {
    const double e = gamma_excess(nu, n.k, gap, windowed);
    if (e == 0.0) return 0.0;
    return n.k * e * detail::angular_weight(n.p, g, inner_cfg).value;
  };
  Estimate excess;
  try {
    excess = (1.0 / M_PI) * integrate_k(f, grid, g, correction_config(cfg, inertial));
  } catch (const ConvergenceError& e) {
    rethrow_with_context(e, "gamma_pair Rindler k_perp integral");
  }
  return inertial + excess;
}

double chi_from_gamma(double gamma_value, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be finite and >= 0");
  if (alpha == 0.0) return 0.0;
  return std::exp(-2.0 * M_PI / alpha) * gamma_value;
}

Estimate omega_pair(double alpha, const cavity::CavitySpec& cavity, double delta_y, const QuadratureConfig& cfg,
                    double x_offset) {
  check_inputs(alpha, delta_y);
  cfg.validate();
  const Geometry g{cavity, 2.0 * M_PI * std::abs(delta_y), 2.0 * M_PI * x_offset};
  Estimate inertial;
  if (g.dy > 0.0) {
    try {
      inertial = detail::inertial_omega(g, cfg);
    } catch (const ConvergenceError& e) {
      rethrow_with_context(e, "omega_pair inertial integral");
    }
  }
  if (alpha == 0.0) return inertial;

  const double nu = 1.0 / alpha;
  const bool windowed = nu > kWindowedOrder;
  auto grid = k_grid(nu, windowed, kOmegaTailT);
  // The ascending series behind small orders overflows past x ~ 700.
  if (nu < kEngineUniformOrder) grid.k_hi = std::min(grid.k_hi, 600.0 / nu);
  for (double s = 1e-8; s < 1.0; s *= 10.0) grid.points.push_back(1.0 + s);
  const auto inner_cfg = cfg.tightened(0.01);
  auto f = [&](const detail::AxisNode& n, double gap) {
    const double d = omega_excess(nu, n.k, gap, windowed);
    if (d == 0.0) return 0.0;
    return n.k * d * detail::angular_weight(n.p, g, inner_cfg).value;
  };
  Estimate excess;
  try {
    excess = (-1.0 / M_PI) * integrate_k(f, grid, g, correction_config(cfg, inertial));
  } catch (const ConvergenceError& e) {
    rethrow_with_context(e, "omega_pair Rindler k_perp integral");
  }
  return inertial + excess;
}

}  // namespace unruh::response
