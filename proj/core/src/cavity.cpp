#include "unruh/cavity.hpp"

#include <cmath>
#include <string>

#include "unruh/errors.hpp"

namespace unruh::cavity {
namespace {

// Weight at k_x L = n pi + delta. With c = cos(k_x L) = (-1)^n cos(delta),
// 1 + R^2 - 2R c = loss^2 + 4R sin^2(k_x L / 2) and sin^2(k_x L) = sin^2(delta)
// keep full relative precision next to the peaks.
double weight_at(long n, double delta, double x_i, double x_j, double L, double loss) {
  const double R = 1.0 - loss;
  const double t2 = loss * (2.0 - loss);
  const bool odd = (n % 2) != 0;
  const double sd = std::sin(delta);
  const double d2 = t2 * t2 + 4.0 * R * R * sd * sd;
  if (x_i == 0.0 && x_j == 0.0) {
    const double h = odd ? std::cos(0.5 * delta) : std::sin(0.5 * delta);
    return t2 * (loss * loss + 4.0 * R * h * h) / d2;
  }
  const double kx = (static_cast<double>(n) * M_PI + delta) / L;
  const double c = odd ? -std::cos(delta) : std::cos(delta);
  const double num = (1.0 + R * R) * std::cos(kx * (x_i - x_j)) - 2.0 * R * std::cos(kx * (x_i + x_j)) * c;
  return t2 * num / d2;
}

ModePoint reduce(double kappa) {
  const double n = std::nearbyint(kappa / M_PI);
  return {static_cast<long>(n), kappa - n * M_PI};
}

}  // namespace

CavitySpec::CavitySpec(double loss, double width) : loss_(loss), width_(width) {
  if (!(loss > 0.0 && loss <= 1.0)) throw DomainError("mirror loss 1-R must lie in (0, 1]");
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("cavity width omega0 L must be positive");
}

CavitySpec CavitySpec::from_reflectivity(double R, double omega0L) {
  if (!(R >= 0.0 && R < 1.0)) throw DomainError("reflectivity must lie in [0, 1)");
  return CavitySpec(1.0 - R, omega0L);
}

CavitySpec CavitySpec::from_loss(double loss, double omega0L) { return CavitySpec(loss, omega0L); }

CavitySpec CavitySpec::from_detuning(double loss, double epsilon) { return CavitySpec(loss, M_PI + epsilon); }

CavitySpec CavitySpec::free_space() { return CavitySpec(1.0, M_PI); }

double CavitySpec::detuning() const noexcept { return width_ - M_PI; }

double CavitySpec::transmission() const noexcept { return std::sqrt(one_minus_r2()); }

double MirrorCoefficients::norm_residual() const { return std::abs(std::norm(r) + std::norm(t) - 1.0); }

double MirrorCoefficients::phase_residual() const {
  return std::abs(std::conj(r) * t + r * std::conj(t));
}

MirrorCoefficients symmetric_mirror(const CavitySpec& spec) {
  return {{-spec.reflectivity(), 0.0}, {0.0, spec.transmission()}};
}

double mode_density(double kappa, double R) {
  if (!(R >= 0.0 && R < 1.0)) throw DomainError("reflectivity must lie in [0, 1)");
  if (!std::isfinite(kappa)) throw DomainError("k_x L must be finite");
  const auto p = reduce(kappa);
  return weight_at(p.n, p.delta, 0.0, 0.0, 1.0, 1.0 - R);
}

double mode_density(double kappa, const CavitySpec& spec) {
  if (!std::isfinite(kappa)) throw DomainError("k_x L must be finite");
  const auto p = reduce(kappa);
  return weight_at(p.n, p.delta, 0.0, 0.0, spec.width(), spec.loss());
}

ModeProfiles mode_profiles(double x, double k_x, const CavitySpec& spec) {
  const double L = spec.width();
  if (!(std::abs(x) <= 0.5 * L)) throw DomainError("position must lie inside the cavity");
  const auto m = symmetric_mirror(spec);
  using C = std::complex<double>;
  const C d = 1.0 - m.r * m.r * std::exp(C(0.0, 2.0 * k_x * L));
  const C u = (m.t * std::exp(C(0.0, k_x * x)) + m.t * m.r * std::exp(C(0.0, -k_x * x + k_x * L))) / d;
  const C up = (m.t * std::exp(C(0.0, -k_x * x)) + m.t * m.r * std::exp(C(0.0, k_x * x + k_x * L))) / d;
  return {u, up};
}

ModePoint mode_point(double k_x, const CavitySpec& spec) { return reduce(k_x * spec.width()); }

double mode_weight(const ModePoint& p, double x_i, double x_j, const CavitySpec& spec) {
  const double L = spec.width();
  if (!(std::abs(x_i) <= 0.5 * L && std::abs(x_j) <= 0.5 * L)) throw DomainError("positions must lie inside the cavity");
  return weight_at(p.n, p.delta, x_i, x_j, L, spec.loss());
}

double mode_weight(double k_x, double x_i, double x_j, const CavitySpec& spec) {
  return mode_weight(mode_point(k_x, spec), x_i, x_j, spec);
}

double gamma0_perfect(double L_over_lambda0) {
  if (!(L_over_lambda0 > 0.0) || !std::isfinite(L_over_lambda0)) throw DomainError("L / lambda0 must be positive");
  // Odd n with n < 2 L / lambda0.
  const double bound = 2.0 * L_over_lambda0;
  long count = 0;
  for (long n = 1; n < bound; n += 2) ++count;
  return static_cast<double>(count) / L_over_lambda0;
}

double quality_factor(const CavitySpec& spec) {
  return spec.width() * std::sqrt(spec.reflectivity()) / spec.loss();
}

double resonance_half_width(const CavitySpec& spec) {
  const double R = spec.reflectivity();
  if (R == 0.0) return M_PI;
  return std::min(M_PI, spec.one_minus_r2() / (2.0 * R));
}

std::vector<double> resonance_offsets(const CavitySpec& spec) {
  std::vector<double> pts;
  const double w = resonance_half_width(spec);
  if (w >= 0.25 * M_PI) return pts;
  pts.push_back(0.0);
  double m = 1.0;
  for (int i = 0; m * w < 0.5 * M_PI; ++i, m *= (i % 2 == 1) ? 3.0 : 10.0 / 3.0) {
    pts.push_back(-m * w);
    pts.push_back(m * w);
  }
  return pts;
}

std::vector<double> resonance_breakpoints(const CavitySpec& spec, double k_lo, double k_hi) {
  std::vector<double> pts;
  const double L = spec.width();
  const double w = resonance_half_width(spec) / L;
  const double spacing = M_PI / L;
  if (w >= 0.5 * spacing) return pts;
  const long n_lo = std::max(1L, static_cast<long>(std::floor(k_lo / spacing)) - 1);
  const long n_hi = static_cast<long>(std::ceil(k_hi / spacing)) + 1;
  for (long n = n_lo | 1L; n <= n_hi; n += 2) {
    const double c = n * spacing;
    pts.push_back(c);
    // Offsets 1, 3, 10, 30, 100, ... half-widths.
    double m = 1.0;
    for (int i = 0; m * w < 0.5 * spacing; ++i, m *= (i % 2 == 1) ? 3.0 : 10.0 / 3.0) {
      pts.push_back(c - m * w);
      pts.push_back(c + m * w);
    }
  }
  std::vector<double> inside;
  for (double p : pts)
    if (p > k_lo && p < k_hi) inside.push_back(p);
  return inside;
}

}  // namespace unruh::cavity
