#pragma once

#include <functional>
#include <vector>

#include "unruh/cavity.hpp"
#include "unruh/quadrature.hpp"

namespace unruh::response::detail {

// Transverse geometry of one pair: separation and common x-position, both
// in units of 1/omega0.
struct Geometry {
  const cavity::CavitySpec& cavity;
  double dy;
  double x0;

  double weight(const cavity::ModePoint& p) const;
  // Off the midplane the even-n cells resonate as well.
  bool resonant_cell(long n) const { return x0 != 0.0 || n % 2 != 0; }
};

// Node of an integral along k, cut into cells k L = n pi + delta. `gap` is
// |k - k_anchor|, exact on the panel that touches the anchor.
struct AxisNode {
  cavity::ModePoint p;
  double k;
  double gap;
};

using AxisIntegrand = std::function<double(const AxisNode&)>;

enum class Anchor { kNone, kLower, kUpper };

// Integral over k in [lo, hi]. Resonant cells get the resonance ladder in
// delta; `k_breaks` are extra breakpoints. The panel next to the anchor is
// taken in the gap variable with an inverse square root transform.
Estimate integrate_axis(const AxisIntegrand& f, cavity::ModePoint lo, cavity::ModePoint hi, Anchor anchor,
                        const std::vector<double>& k_breaks, const Geometry& g, const QuadratureConfig& cfg);

// H(k) = int_{-pi/2}^{pi/2} W(k cos th) cos(k sin th dy) d th, taken as
// 2 int_0^k W(k_x) cos(s dy) / s dk_x with s = sqrt(k^2 - k_x^2).
Estimate angular_weight(const cavity::ModePoint& k, const Geometry& g, const QuadratureConfig& cfg);
Estimate angular_weight(double k, const Geometry& g, const QuadratureConfig& cfg);

// int_0^1 W(k) J0(sqrt(1-k^2) dy) dk.
Estimate inertial_gamma(const Geometry& g, const QuadratureConfig& cfg);

// int_0^1 W Y0(sqrt(1-k^2) dy) dk - (2/pi) int_1^inf W K0(sqrt(k^2-1) dy) dk,
// dy > 0.
Estimate inertial_omega(const Geometry& g, const QuadratureConfig& cfg);

// Smooth cut-off in the Airy variable: 1 below kWindowStart, 0 above
// kWindowEnd. The taper is wide enough that the neglected oscillation
// leaks below 1e-15 relative.
double window(double t);
inline constexpr double kWindowStart = 16.0;
inline constexpr double kWindowEnd = 64.0;

}  // namespace unruh::response::detail
