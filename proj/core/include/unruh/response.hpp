#pragma once

#include <Eigen/Dense>

#include "unruh/cavity.hpp"
#include "unruh/quadrature.hpp"

namespace unruh::response {

/// One physical configuration. Lengths are in units of lambda0, rates in
/// units of the free-space rate gamma_fr.
struct Scenario {
  double alpha = 0.0;  // a / omega0; 0 means inertial
  cavity::CavitySpec cavity = cavity::CavitySpec::free_space();
  double spacing_d_over_lambda0 = 1.0;
  int n_atoms = 1;
  double theta0 = 3.141592653589793;
  double phi0 = 0.0;
  // Common x-position of the array relative to the midplane.
  double x_offset_over_lambda0 = 0.0;
  QuadratureConfig quad{};
  int workers = 1;

  void validate() const;
};

struct RateMatrix {
  Eigen::MatrixXd gamma;
  Eigen::MatrixXd chi;
  Eigen::MatrixXd omega;
  Eigen::MatrixXd gamma_error;
  Eigen::MatrixXd omega_error;
  double alpha = 0.0;

  int size() const { return static_cast<int>(gamma.rows()); }
};

/// gamma_fr per unit g^2: the half-space polar integral
///   pi int_0^1 k dk / sqrt(1 - k^2) * 2 pi / (2 pi)^3 = 1 / (4 pi).
double gamma_free_inertial();

/// Same quantity by numerical quadrature, for checking the closed form.
Estimate gamma_free_inertial_quadrature(const QuadratureConfig& cfg = {});

/// Pair emission rate gamma_ij / gamma_fr for atoms separated by delta_y
/// (units lambda0). delta_y = 0 gives the single-atom rate.
Estimate gamma_pair(double alpha, const cavity::CavitySpec& cavity, double delta_y,
                    const QuadratureConfig& cfg = {}, double x_offset_over_lambda0 = 0.0);

/// Reference evaluation of the Rindler rate that keeps the omega' integral
/// explicit (k_perp cosh u substitution over rindler_kernel). Slow; meant
/// for alpha >= 0.1.
Estimate gamma_pair_direct(double alpha, const cavity::CavitySpec& cavity, double delta_y,
                           const QuadratureConfig& cfg = {});

/// chi = exp(-2 pi / alpha) gamma; zero for alpha = 0.
double chi_from_gamma(double gamma_value, double alpha);

/// Coherent coupling Omega_ij / gamma_fr. At delta_y = 0 the divergent
/// inertial self-energy is absorbed into omega0 and only the finite
/// acceleration-induced part is returned (zero for alpha = 0).
Estimate omega_pair(double alpha, const cavity::CavitySpec& cavity, double delta_y,
                    const QuadratureConfig& cfg = {}, double x_offset_over_lambda0 = 0.0);

/// Toeplitz assembly over the uniform array. Throws on any failed entry.
RateMatrix rate_matrix(const Scenario& scenario);

/// Smallest eigenvalue of the gamma matrix.
double gamma_min_eigenvalue(const RateMatrix& rm);

/// min eigenvalue >= -tol * max diagonal.
bool gamma_is_psd(const RateMatrix& rm, double tol = 1e-10);

}  // namespace unruh::response
