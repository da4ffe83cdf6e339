#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace unruh::cavity {

/// Symmetric planar cavity of two identical lossy mirrors at x = +-L/2.
/// The loss 1 - R is stored directly so that R = 1 - 1e-9 keeps full
/// precision.
class CavitySpec {
 public:
  static CavitySpec from_reflectivity(double R, double omega0L);
  static CavitySpec from_loss(double loss, double omega0L);
  /// omega0 L = pi + epsilon.
  static CavitySpec from_detuning(double loss, double epsilon);
  static CavitySpec free_space();

  double reflectivity() const noexcept { return 1.0 - loss_; }
  double loss() const noexcept { return loss_; }
  double width() const noexcept { return width_; }
  double detuning() const noexcept;
  /// 1 - R^2 = T^2, computed from the loss.
  double one_minus_r2() const noexcept { return loss_ * (2.0 - loss_); }
  double transmission() const noexcept;

 private:
  CavitySpec(double loss, double width);
  double loss_;
  double width_;
};

struct MirrorCoefficients {
  std::complex<double> r;
  std::complex<double> t;

  /// | |r|^2 + |t|^2 - 1 |
  double norm_residual() const;
  /// | r* t + r t* |
  double phase_residual() const;
};

/// t = iT, r = -R.
MirrorCoefficients symmetric_mirror(const CavitySpec& spec);

/// rho(kappa; R) for kappa = k_x L.
double mode_density(double kappa, double R);
double mode_density(double kappa, const CavitySpec& spec);

struct ModeProfiles {
  std::complex<double> u;
  std::complex<double> u_prime;
};

/// Left- and right-incident mode functions inside the cavity, |x| <= L/2.
ModeProfiles mode_profiles(double x, double k_x, const CavitySpec& spec);

/// Transverse weight of the two-point function for atoms at x_i, x_j:
///   T^2 {(1+R^2) cos k_x(x_i-x_j) - 2R cos k_x(x_i+x_j) cos k_x L} / |D|^2.
/// Equals mode_density(k_x L) at the midplane.
double mode_weight(double k_x, double x_i, double x_j, const CavitySpec& spec);

/// A transverse wavenumber as k_x L = n pi + delta with |delta| <= pi/2.
/// Carrying delta separately resolves resonances far narrower than the
/// rounding of k_x itself.
struct ModePoint {
  long n = 0;
  double delta = 0.0;

  double kx(const CavitySpec& spec) const { return (static_cast<double>(n) * M_PI + delta) / spec.width(); }
};

ModePoint mode_point(double k_x, const CavitySpec& spec);

/// mode_weight evaluated at a ModePoint.
double mode_weight(const ModePoint& p, double x_i, double x_j, const CavitySpec& spec);

/// Offsets in delta around a resonance centre at 0, +-{1, 3, 10, 30, ...}
/// half-widths up to pi/2. Empty when the peaks overlap.
std::vector<double> resonance_offsets(const CavitySpec& spec);

/// Perfect-mirror inertial rate in units of the free-space rate:
/// (lambda0 / L) * #{odd n : n < 2 L / lambda0}.
double gamma0_perfect(double L_over_lambda0);

/// Q = omega0 L sqrt(R) / (1 - R).
double quality_factor(const CavitySpec& spec);

/// Half width at half maximum of the resonance peaks of rho, in kappa.
double resonance_half_width(const CavitySpec& spec);

/// Breakpoints in k_x on [k_lo, k_hi] bracketing the odd-n resonance peaks
/// at n pi / L, at offsets m * half-width for a geometric ladder of m.
std::vector<double> resonance_breakpoints(const CavitySpec& spec, double k_lo, double k_hi);

}  // namespace unruh::cavity
