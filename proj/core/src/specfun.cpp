#include "unruh/specfun.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/tools/roots.hpp>
#include <cfloat>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "specfun_detail.hpp"
#include "uniform_expansion.hpp"
#include "unruh/errors.hpp"

namespace unruh::specfun {
namespace {

// Below this order the ascending series for the I-sum is used; above it
// the series loses roughly exp(nu/4) to cancellation.
constexpr double kSeriesThreshold = 20.0;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive and finite");
}

std::complex<double> log_gamma(std::complex<double> w) {
  std::complex<double> shift = 0.0;
  while (w.real() < 20.0) {
    shift += std::log(w);
    w += 1.0;
  }
  static constexpr double b[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                                 1.0 / 1188, -691.0 / 360360, 1.0 / 156};
  const std::complex<double> inv = 1.0 / w, inv2 = inv * inv;
  std::complex<double> tail = 0.0;
  for (int k = 6; k >= 0; --k) tail = tail * inv2 + b[k];
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * M_PI) + tail * inv - shift;
}

// Ai, Ai' multiplied by exp(xi) and Bi, Bi' by exp(-xi), xi = (2/3) y^{3/2},
// for y > 0.
struct ScaledAiry {
  double ai, aip, bi, bip;
};

ScaledAiry scaled_airy(double y) {
  const double xi = 2.0 / 3.0 * y * std::sqrt(y);
  if (y <= 100.0) {
    const double e = std::exp(xi);
    return {boost::math::airy_ai(y) * e, boost::math::airy_ai_prime(y) * e,
            boost::math::airy_bi(y) / e, boost::math::airy_bi_prime(y) / e};
  }
  constexpr double u[] = {1.0, 5.0 / 72, 385.0 / 10368, 85085.0 / 2239488};
  constexpr double v[] = {1.0, -7.0 / 72, -455.0 / 10368, -95095.0 / 2239488};
  double su = 0, sua = 0, sv = 0, sva = 0, p = 1.0;
  for (int k = 0; k < 4; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    su += u[k] * p;
    sua += sgn * u[k] * p;
    sv += v[k] * p;
    sva += sgn * v[k] * p;
    p /= xi;
  }
  const double q = std::sqrt(std::sqrt(y)), rp = 1.0 / std::sqrt(M_PI);
  return {0.5 * rp / q * sua, -0.5 * rp * q * sva, rp / q * su, rp * q * sv};
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) { require_positive(nu, "Bessel order"); }

Estimate besselK_im_scaled_quadrature(BesselOrder order, double x, const QuadratureConfig& cfg) {
  require_positive(x, "argument");
  cfg.validate();
  const double nu = order.value();
  const double z = x / nu;
  const double eta_min = std::min(M_PI / 2, 6.0 / nu);
  const double eta = z > 1.0 ? std::max(std::acos(1.0 / z), eta_min) : eta_min;
  const double se = std::sin(eta), ce = std::cos(eta);
  const double e0 = nu * eta - x * se;

  auto f = [=](double s) {
    const double h = std::sinh(0.5 * s);
    return std::exp(e0 - 2.0 * x * se * h * h) * std::cos(nu * s - x * ce * std::sinh(s));
  };

  const double cut = 5.0 - std::log(cfg.truncation_threshold);
  const double s_max = std::acosh(1.0 + cut / (x * se));
  std::vector<quad::Panel> panels;
  for (double s = 0.0; s < s_max;) {
    const double rate = std::abs(nu - x * ce * std::cosh(s));
    const double step = std::min({0.5, M_PI / std::max(rate, 1e-300), s_max - s});
    panels.push_back({s, s + step});
    s += step;
  }
  QuadratureConfig local = cfg;
  local.abs_tol = std::max(cfg.abs_tol * std::exp(e0), DBL_MIN);
  return quad::integrate(f, panels, local);
}

double besselK_im_scaled_uniform(BesselOrder order, double x) {
  require_positive(x, "argument");
  const double z = x / order.value();
  return detail::besselK_uniform(order.value(), z, 1.0 - z);
}

double besselK_im_scaled(BesselOrder nu, double x) {
  if (nu.value() >= kUniformPathThreshold) return besselK_im_scaled_uniform(nu, x);
  return besselK_im_scaled_quadrature(nu, x).value;
}

double besselI_im_sum_scaled_series(BesselOrder order, double x) {
  require_positive(x, "argument");
  const double nu = order.value();
  const double lh = std::log(0.5 * x);
  std::complex<double> term = std::exp(std::complex<double>(-0.5 * M_PI * nu, nu * lh) -
                                       log_gamma({1.0, nu}));
  std::complex<double> sum = term;
  const double q = 0.25 * x * x;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (double(k) * std::complex<double>(k, nu));
    sum += term;
    if (k > 0.5 * x && std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 * sum.real();
}

double besselI_im_sum_scaled_uniform(BesselOrder order, double x) {
  require_positive(x, "argument");
  const double nu = order.value();
  const double z = x / nu;
  const auto m = detail::airy_map(z);
  const auto s = detail::uniform_sums(nu, z);
  const double n13 = std::cbrt(nu);
  const double arg = -n13 * n13 * m.zeta;
  return -std::expm1(-2.0 * M_PI * nu) * M_SQRT2 / n13 * m.phi *
         (boost::math::airy_bi(arg) * s.a + boost::math::airy_bi_prime(arg) * s.b / (nu * n13));
}

double besselI_im_sum_scaled(BesselOrder nu, double x) {
  if (nu.value() >= kSeriesThreshold) return besselI_im_sum_scaled_uniform(nu, x);
  return besselI_im_sum_scaled_series(nu, x);
}

double besselI_im_sum(BesselOrder nu, double x) {
  const double growth = 0.5 * M_PI * nu.value();
  if (growth > 700.0) throw DomainError("I_{i nu} + I_{-i nu} overflows for this order");
  return std::exp(growth) * besselI_im_sum_scaled(nu, x);
}

double besselKI_product_scaled(BesselOrder order, double x) {
  require_positive(x, "argument");
  const double nu = order.value();
  if (nu < kSeriesThreshold) {
    return nu * besselK_im_scaled(order, x) * besselI_im_sum_scaled_series(order, x);
  }
  const double z = x / nu;
  return detail::KI_product_uniform(nu, z, 1.0 - z);
}

double scaled_K_squared_average(double nu, double z) {
  require_positive(nu, "order");
  require_positive(z, "argument");
  return detail::K_squared_average(nu, z, 1.0 - z);
}

double airy_variable(double nu, double z) {
  require_positive(nu, "order");
  require_positive(z, "argument");
  return detail::airy_variable(nu, z, 1.0 - z);
}

namespace detail {

double besselK_uniform(double nu, double z, double gap) {
  const auto m = airy_map(z, gap);
  const auto s = uniform_sums(nu, z);
  const double n13 = std::cbrt(nu);
  const double arg = -n13 * n13 * m.zeta;
  return M_PI * M_SQRT2 / n13 * m.phi *
         (boost::math::airy_ai(arg) * s.a + boost::math::airy_ai_prime(arg) * s.b / (nu * n13));
}

double KI_product_uniform(double nu, double z, double gap) {
  const auto m = airy_map(z, gap);
  const auto s = uniform_sums(nu, z);
  const double n13 = std::cbrt(nu);
  const double arg = -n13 * n13 * m.zeta;
  const double c = s.b / (nu * n13);
  double kp, ip;
  if (arg <= 0.0) {
    kp = boost::math::airy_ai(arg) * s.a + boost::math::airy_ai_prime(arg) * c;
    ip = boost::math::airy_bi(arg) * s.a + boost::math::airy_bi_prime(arg) * c;
  } else {
    const auto a = scaled_airy(arg);
    kp = a.ai * s.a + a.aip * c;
    ip = a.bi * s.a + a.bip * c;
  }
  return -std::expm1(-2.0 * M_PI * nu) * 2.0 * M_PI * n13 * m.phi * m.phi * kp * ip;
}

double K_squared_average(double nu, double z, double gap) {
  if (gap <= 0.0) return 0.0;
  const auto m = airy_map(z, gap);
  const double n13 = std::cbrt(nu);
  const auto s = uniform_sums(nu, z);
  const auto am = airy_moduli(n13 * n13 * m.zeta);
  // Means of Ai^2, Ai Ai' and Ai'^2 are M^2/2, -(dM^2/dt)/4 and N^2/2.
  const double c = s.b / (nu * n13);
  return M_PI * n13 * m.phi * m.phi *
         (s.a * s.a * am.m2 - s.a * c * am.dm2_dt + c * c * am.n2);
}

double airy_variable(double nu, double z, double gap) {
  const double n13 = std::cbrt(nu);
  return n13 * n13 * airy_map(z, gap).zeta;
}

}  // namespace detail

double z_from_airy_variable(double nu, double t) {
  require_positive(nu, "order");
  if (!std::isfinite(t)) throw DomainError("Airy variable must be finite");
  if (t == 0.0) return 1.0;
  const double n13 = std::cbrt(nu);
  const double target = t / (n13 * n13);
  auto g = [&](double z) { return detail::airy_map(z).zeta - target; };
  double lo = 1.0, hi = 1.0;
  if (target > 0) {
    while (g(lo) < 0) lo *= 0.5;
  } else {
    while (g(hi) > 0) hi *= 2.0;
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

double rindler_kernel(double omega_prime, double alpha) {
  require_positive(omega_prime, "omega'");
  require_positive(alpha, "alpha");
  return 4.0 / alpha * besselK_im_scaled(BesselOrder(2.0 / alpha), 2.0 * omega_prime / alpha);
}

}  // namespace unruh::specfun
