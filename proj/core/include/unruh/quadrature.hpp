#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace unruh {

struct QuadratureConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
  int max_subdivisions = 400;
  // Fraction of the running peak magnitude below which oscillatory or
  // decaying tails are cut.
  double truncation_threshold = 1e-15;

  void validate() const;
  QuadratureConfig tightened(double factor) const;
};

/// A value with an attached absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
};

Estimate operator+(Estimate a, const Estimate& b);
Estimate operator*(double s, Estimate e);

/// Ratio with relative errors combined in quadrature.
Estimate ratio(const Estimate& num, const Estimate& den);

namespace quad {

using Integrand = std::function<double(double)>;

/// Endpoint behaviour used to pick a change of variables on a panel.
enum class Endpoint {
  kRegular,
  kInverseSqrtRight,  // f ~ (b - x)^{-1/2}
  kInverseSqrtLeft,   // f ~ (x - a)^{-1/2}
};

struct Panel {
  double a;
  double b;
  Endpoint endpoint = Endpoint::kRegular;
};

/// One 21-point Gauss-Kronrod rule on [a, b]; the error is |K21 - G10|.
Estimate gauss_kronrod21(const Integrand& f, double a, double b);

/// Globally adaptive Gauss-Kronrod over a list of panels. Subdivision
/// always splits the interval with the largest error; ties resolve by
/// position, so the schedule is deterministic. Throws ConvergenceError
/// when the budget of `cfg.max_subdivisions` per initial panel is spent
/// without meeting max(abs_tol, rel_tol * |I|).
Estimate integrate(const Integrand& f, std::span<const Panel> panels,
                   const QuadratureConfig& cfg);

/// Integrand that is also told which initial panel the node belongs to, so
/// panels may carry their own local coordinates.
using PanelIntegrand = std::function<double(std::size_t panel, double x)>;

Estimate integrate(const PanelIntegrand& f, std::span<const Panel> panels,
                   const QuadratureConfig& cfg);

Estimate integrate(const Integrand& f, double a, double b,
                   const QuadratureConfig& cfg);

/// Sorted, deduplicated regular panels from breakpoints clipped to [a, b].
std::vector<Panel> panels_from_breakpoints(double a, double b,
                                           std::vector<double> points);

/// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
/// best estimate and the difference between the last two diagonal entries.
Estimate wynn_epsilon(std::span<const double> partial_sums);

}  // namespace quad
}  // namespace unruh
