#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <vector>

#include "unruh/errors.hpp"
#include "unruh/specfun.hpp"

namespace unruh::specfun {
namespace {

constexpr int kTailTerms = 48;

struct Phase {
  double w, alpha;
  double operator()(double s) const { return s - 2.0 * w / alpha * std::sinh(0.5 * alpha * s); }
};

double solve_crossing(const Phase& ph, double level, double lo, double hi) {
  std::uintmax_t iters = 200;
  auto g = [&](double s) { return ph(s) - level; };
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

// Points where the phase crosses multiples of pi: every crossing on the
// rising branch up to the stationary point, then kTailTerms crossings on the
// falling branch. Returns the index where the falling-branch tail begins.
std::vector<double> crossings(const Phase& ph, std::size_t& tail_start) {
  std::vector<double> pts{0.0};
  const double w = ph.w, a = ph.alpha;
  const double s_star = w < 1.0 ? 2.0 / a * std::acosh(1.0 / w) : 0.0;
  const double p_star = ph(s_star);
  for (int k = 1; k * M_PI < p_star; ++k) pts.push_back(solve_crossing(ph, k * M_PI, 0.0, s_star));
  if (s_star > 0.0) pts.push_back(s_star);
  // Largest multiple of pi strictly below the stationary value.
  int m = static_cast<int>(std::ceil(p_star / M_PI)) - 1;
  double lo = s_star;
  tail_start = 0;
  for (int j = 0; j < kTailTerms + 1; ++j, --m) {
    const double level = m * M_PI;
    double hi = lo + 1.0;
    while (ph(hi) > level) hi = lo + 2.0 * (hi - lo);
    lo = solve_crossing(ph, level, lo, hi);
    if (j == 0) tail_start = pts.size();
    pts.push_back(lo);
  }
  return pts;
}

Estimate half_line(const quad::Integrand& f, const std::vector<double>& pts, std::size_t tail_start,
                   const QuadratureConfig& cfg) {
  Estimate head;
  for (std::size_t i = 0; i < tail_start; ++i) head += quad::integrate(f, pts[i], pts[i + 1], cfg);
  std::vector<double> partial{head.value};
  double err = head.error;
  for (std::size_t i = tail_start; i + 1 < pts.size(); ++i) {
    const auto piece = quad::integrate(f, pts[i], pts[i + 1], cfg);
    partial.push_back(partial.back() + piece.value);
    err += piece.error;
  }
  const auto acc = quad::wynn_epsilon(partial);
  return {acc.value, acc.error + err};
}

}  // namespace

TimeDomainKernel rindler_kernel_timedomain(double omega_prime, double alpha, const QuadratureConfig& cfg) {
  if (!(omega_prime > 0.0) || !std::isfinite(omega_prime)) throw DomainError("omega' must be positive");
  if (!(alpha >= 0.05) || !std::isfinite(alpha)) throw DomainError("time-domain kernel requires alpha >= 0.05");
  cfg.validate();

  const Phase plus{omega_prime, alpha};
  std::size_t tail = 0;
  const auto pts = crossings(plus, tail);
  const auto c = half_line([&](double s) { return std::cos(plus(s)); }, pts, tail, cfg);
  const auto sp = half_line([&](double s) { return std::sin(plus(s)); }, pts, tail, cfg);
  // phase(-s) = -phase(s), so the s < 0 half contributes the same cosine and
  // the opposite sine; the imaginary part is kept as the explicit sum.
  const auto sm = half_line([&](double s) { return std::sin(-plus(s)); }, pts, tail, cfg);

  TimeDomainKernel out;
  out.real = 2.0 * c.value;
  out.imag = sp.value + sm.value;
  out.error = 2.0 * c.error + sp.error + sm.error;
  out.half_periods = static_cast<int>(pts.size()) - 1;
  const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.real));
  if (!(out.error <= 1e3 * target)) {
    throw ConvergenceError("time-domain kernel did not converge", out.error);
  }
  return out;
}

}  // namespace unruh::specfun
