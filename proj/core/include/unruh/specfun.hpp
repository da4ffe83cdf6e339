#pragma once

#include "unruh/quadrature.hpp"

namespace unruh::specfun {

/// Magnitude of an imaginary Bessel order; the order itself is i*nu.
class BesselOrder {
 public:
  explicit BesselOrder(double nu);
  double value() const noexcept { return nu_; }

 private:
  double nu_;
};

/// Orders at or above this use the uniform Airy-type expansion.
inline constexpr double kUniformPathThreshold = 200.0;

/// Scaled Macdonald function of imaginary order,
///   K~(nu, x) = exp(pi nu / 2) K_{i nu}(x),
/// which stays O(1) (oscillatory for x < nu, decaying for x > nu) even when
/// nu is of order 1e9. Dispatches between the quadrature path and the
/// uniform expansion at kUniformPathThreshold.
double besselK_im_scaled(BesselOrder nu, double x);

/// Quadrature path: the integral  int_0^inf exp(-x cosh t) cos(nu t) dt
/// evaluated along the shifted contour Im t = pi/2 - eta that passes
/// through (or next to) the saddle point, which removes the exp(-pi nu/2)
/// cancellation of the real-axis form.
Estimate besselK_im_scaled_quadrature(BesselOrder nu, double x,
                                      const QuadratureConfig& cfg = {});

/// Uniform asymptotic path (Airy-type, five terms in each series).
double besselK_im_scaled_uniform(BesselOrder nu, double x);

/// I_{-i nu}(x) + I_{i nu}(x) = 2 Re I_{i nu}(x). Grows like exp(pi nu/2);
/// throws DomainError once that overflows.
double besselI_im_sum(BesselOrder nu, double x);

/// exp(-pi nu/2) [I_{-i nu}(x) + I_{i nu}(x)]: power series below nu = 20,
/// uniform expansion above.
double besselI_im_sum_scaled(BesselOrder nu, double x);

/// Ascending power series of exp(-pi nu/2) * 2 Re I_{i nu}(x).
double besselI_im_sum_scaled_series(BesselOrder nu, double x);

/// Uniform asymptotic path for the scaled I-sum.
double besselI_im_sum_scaled_uniform(BesselOrder nu, double x);

/// nu * K~(nu, x) * I~(nu, x), assembled without forming either factor's
/// exponential growth separately when the uniform path is in use.
double besselKI_product_scaled(BesselOrder nu, double x);

/// Smooth (oscillation-averaged) part of nu K~(nu, nu z)^2 / pi from the
/// uniform expansion, with Ai^2, Ai Ai' and Ai'^2 replaced by their local
/// means. Zero for
/// z >= 1. Tends to 1/sqrt(1 - z^2) as nu grows.
double scaled_K_squared_average(double nu, double z);

/// Airy variable t = nu^{2/3} zeta(z) of the uniform expansion (t > 0 on the
/// oscillatory side z < 1).
double airy_variable(double nu, double z);

/// Inverse of airy_variable in z for fixed nu.
double z_from_airy_variable(double nu, double t);

/// Rindler spectral participation strength, in units of 1/omega0:
///   omega0 I_Rindler = (4/alpha) K~(2/alpha, 2 omega'/alpha).
double rindler_kernel(double omega_prime, double alpha);

struct TimeDomainKernel {
  double real = 0.0;
  double imag = 0.0;
  double error = 0.0;
  int half_periods = 0;
};

/// Independent evaluation of
///   int ds exp(i s) exp(-2 i (omega'/alpha) sinh(alpha s / 2))
/// by half-period partitioning and Wynn acceleration of the alternating
/// tail. Requires alpha >= 0.05.
TimeDomainKernel rindler_kernel_timedomain(double omega_prime, double alpha,
                                           const QuadratureConfig& cfg = {});

}  // namespace unruh::specfun
