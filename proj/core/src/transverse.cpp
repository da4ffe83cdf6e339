#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "response_detail.hpp"
#include "unruh/errors.hpp"

namespace unruh::response::detail {

using cavity::ModePoint;

double Geometry::weight(const ModePoint& p) const { return cavity::mode_weight(p, x0, x0, cavity); }

Estimate integrate_axis(const AxisIntegrand& f, ModePoint lo, ModePoint hi, Anchor anchor,
                        const std::vector<double>& k_breaks, const Geometry& g, const QuadratureConfig& cfg) {
  const double L = g.cavity.width();
  // Panel i covers delta in its own cell; anchored panels run over q = |delta - delta_anchor|.
  struct Local {
    long n;
    double origin;
    double dir;
  };
  std::vector<quad::Panel> panels;
  std::vector<Local> local;
  std::vector<ModePoint> breaks;
  for (double k : k_breaks) breaks.push_back(cavity::mode_point(k, g.cavity));
  const auto offsets = cavity::resonance_offsets(g.cavity);

  for (long n = lo.n; n <= hi.n; ++n) {
    const double a = n == lo.n ? lo.delta : -0.5 * M_PI;
    const double b = n == hi.n ? hi.delta : 0.5 * M_PI;
    if (!(b > a)) continue;
    std::vector<double> pts{a, b};
    if (g.resonant_cell(n))
      for (double d : offsets)
        if (d > a && d < b) pts.push_back(d);
    for (const auto& p : breaks)
      if (p.n == n && p.delta > a && p.delta < b) pts.push_back(p.delta);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double x0 = pts[i], x1 = pts[i + 1];
      if (anchor == Anchor::kLower && n == lo.n && i == 0) {
        panels.push_back({0.0, x1 - x0, quad::Endpoint::kInverseSqrtLeft});
        local.push_back({n, x0, 1.0});
      } else if (anchor == Anchor::kUpper && n == hi.n && i + 2 == pts.size()) {
        panels.push_back({0.0, x1 - x0, quad::Endpoint::kInverseSqrtLeft});
        local.push_back({n, x1, -1.0});
      } else {
        panels.push_back({x0, x1});
        local.push_back({n, 0.0, 0.0});
      }
    }
  }

  const ModePoint ref = anchor == Anchor::kLower ? lo : hi;
  const double k_ref = ref.kx(g.cavity);
  auto h = [&](std::size_t i, double x) {
    const Local& l = local[i];
    AxisNode node;
    if (l.dir != 0.0) {
      node.p = {l.n, l.origin + l.dir * x};
      node.gap = x / L;
    } else {
      node.p = {l.n, x};
      node.gap = anchor == Anchor::kNone ? std::numeric_limits<double>::quiet_NaN()
                 : l.n == ref.n          ? std::abs(x - ref.delta) / L
                                         : std::abs(node.p.kx(g.cavity) - k_ref);
    }
    node.k = node.p.kx(g.cavity);
    return f(node);
  };
  // dk = d delta / L; the target is scaled to match.
  QuadratureConfig local_cfg = cfg;
  local_cfg.abs_tol = cfg.abs_tol * L;
  return (1.0 / L) * quad::integrate(h, panels, local_cfg);
}

Estimate angular_weight(const ModePoint& kp, const Geometry& g, const QuadratureConfig& cfg) {
  const double k = kp.kx(g.cavity);
  auto f = [&](const AxisNode& n) {
    const double s = std::sqrt(n.gap * (2.0 * k - n.gap));
    return g.weight(n.p) * std::cos(s * g.dy) / s;
  };
  // Extrema of the cosine, s dy = i pi.
  std::vector<double> bp;
  const double phase = k * g.dy;
  const int n_osc = static_cast<int>(std::floor(phase / M_PI));
  for (int i = 1; i <= n_osc; ++i) {
    const double s = i * M_PI / g.dy;
    bp.push_back(std::sqrt((k - s) * (k + s)));
  }
  return 2.0 * integrate_axis(f, {0, 0.0}, kp, Anchor::kUpper, bp, g, cfg);
}

Estimate angular_weight(double k, const Geometry& g, const QuadratureConfig& cfg) {
  return angular_weight(cavity::mode_point(k, g.cavity), g, cfg);
}

namespace {

std::vector<double> propagating_zeros(double dy) {
  std::vector<double> bp;
  const int n_osc = static_cast<int>(std::floor(dy / M_PI));
  for (int i = 1; i <= n_osc; ++i) {
    const double s = i * M_PI / dy;
    bp.push_back(std::sqrt((1.0 - s) * (1.0 + s)));
  }
  return bp;
}

}  // namespace

Estimate inertial_gamma(const Geometry& g, const QuadratureConfig& cfg) {
  auto f = [&](const AxisNode& n) {
    return g.weight(n.p) * std::cyl_bessel_j(0.0, std::sqrt(n.gap * (2.0 - n.gap)) * g.dy);
  };
  const auto one = cavity::mode_point(1.0, g.cavity);
  return integrate_axis(f, {0, 0.0}, one, Anchor::kUpper, propagating_zeros(g.dy), g, cfg);
}

Estimate inertial_omega(const Geometry& g, const QuadratureConfig& cfg) {
  if (!(g.dy > 0.0)) throw DomainError("inertial coherent coupling diverges at zero separation");
  const auto one = cavity::mode_point(1.0, g.cavity);
  QuadratureConfig half = cfg;
  half.abs_tol = 0.5 * cfg.abs_tol;

  auto f1 = [&](const AxisNode& n) {
    return g.weight(n.p) * std::cyl_neumann(0.0, std::sqrt(n.gap * (2.0 - n.gap)) * g.dy);
  };
  std::vector<double> bp1 = propagating_zeros(g.dy);
  for (double q = 0.1; q > 1e-12; q *= 0.1) bp1.push_back(1.0 - q);
  const auto prop = integrate_axis(f1, {0, 0.0}, one, Anchor::kUpper, bp1, g, half);

  auto f2 = [&](const AxisNode& n) {
    return g.weight(n.p) * std::cyl_bessel_k(0.0, std::sqrt(n.gap * (2.0 + n.gap)) * g.dy);
  };
  // K0 has fallen below 1e-20 once sqrt(k^2 - 1) dy = 45.
  const double k_max = std::hypot(1.0, 45.0 / g.dy);
  std::vector<double> bp2;
  for (double q = 0.1; q > 1e-12; q *= 0.1) bp2.push_back(1.0 + q);
  for (double k = 2.0; k < k_max; k *= 2.0) bp2.push_back(k);
  const auto evan =
      integrate_axis(f2, one, cavity::mode_point(k_max, g.cavity), Anchor::kLower, bp2, g, half);

  return prop + (-2.0 / M_PI) * evan;
}

double window(double t) {
  if (t <= kWindowStart) return 1.0;
  if (t >= kWindowEnd) return 0.0;
  const double s = (t - kWindowStart) / (kWindowEnd - kWindowStart);
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return b / (a + b);
}

}  // namespace unruh::response::detail
