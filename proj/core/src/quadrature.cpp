#include "unruh/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "unruh/errors.hpp"

namespace unruh {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw DomainError("max_subdivisions must be at least 1");
  }
  if (!(truncation_threshold > 0.0) || truncation_threshold >= 1.0) {
    throw DomainError("truncation_threshold must lie in (0, 1)");
  }
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
  QuadratureConfig c = *this;
  c.abs_tol *= factor;
  c.rel_tol *= factor;
  c.max_subdivisions = static_cast<int>(max_subdivisions / factor);
  return c;
}

Estimate operator+(Estimate a, const Estimate& b) {
  a += b;
  return a;
}

Estimate operator*(double s, Estimate e) {
  return {s * e.value, std::abs(s) * e.error};
}

Estimate ratio(const Estimate& num, const Estimate& den) {
  const double r = num.value / den.value;
  const double rn = num.value != 0.0 ? num.error / std::abs(num.value) : 0.0;
  const double rd = den.error / std::abs(den.value);
  return {r, std::abs(r) * std::hypot(rn, rd)};
}

namespace quad {
namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600342046360, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kRoundoffFactor = 50.0;

struct Interval {
  double a;
  double b;
  Endpoint endpoint;
  std::size_t panel;
  double value;
  double error;
  bool final;
};

Estimate rule_on(const PanelIntegrand& pf, const Interval& iv) {
  auto f = [&](double x) { return pf(iv.panel, x); };
  switch (iv.endpoint) {
    case Endpoint::kRegular:
      return gauss_kronrod21(f, iv.a, iv.b);
    case Endpoint::kInverseSqrtRight: {
      // x = b - (b - a) u^2 on u in [0, 1]
      const double a = iv.a, w = iv.b - iv.a;
      auto g = [&](double u) { return f(iv.b - w * u * u) * 2.0 * w * u; };
      (void)a;
      return gauss_kronrod21(g, 0.0, 1.0);
    }
    case Endpoint::kInverseSqrtLeft: {
      const double w = iv.b - iv.a;
      auto g = [&](double u) { return f(iv.a + w * u * u) * 2.0 * w * u; };
      return gauss_kronrod21(g, 0.0, 1.0);
    }
  }
  return {};
}

// Splitting a transformed panel keeps the transform on the half that
// touches the singular endpoint; split at the image of u = 1/2 so the
// halves carry comparable weight.
std::pair<Interval, Interval> split(const Interval& iv) {
  Interval l = iv, r = iv;
  double mid = 0.5 * (iv.a + iv.b);
  if (iv.endpoint == Endpoint::kInverseSqrtRight) {
    mid = iv.b - 0.25 * (iv.b - iv.a);
    l.endpoint = Endpoint::kRegular;
  } else if (iv.endpoint == Endpoint::kInverseSqrtLeft) {
    mid = iv.a + 0.25 * (iv.b - iv.a);
    r.endpoint = Endpoint::kRegular;
  }
  l.b = mid;
  r.a = mid;
  return {l, r};
}

}  // namespace

Estimate gauss_kronrod21(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[10];
  double resg = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    resk += kWgk[j] * s;
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

Estimate integrate(const Integrand& f, std::span<const Panel> panels,
                   const QuadratureConfig& cfg) {
  return integrate([&f](std::size_t, double x) { return f(x); }, panels, cfg);
}

Estimate integrate(const PanelIntegrand& f, std::span<const Panel> panels,
                   const QuadratureConfig& cfg) {
  std::vector<Interval> work;
  work.reserve(panels.size() + static_cast<std::size_t>(cfg.max_subdivisions));
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const Panel& p = panels[i];
    if (!(p.b > p.a)) continue;
    Interval iv{p.a, p.b, p.endpoint, i, 0.0, 0.0, false};
    const Estimate e = rule_on(f, iv);
    iv.value = e.value;
    iv.error = e.error;
    work.push_back(iv);
  }
  double magnitude = 0.0;
  auto totals = [&work, &magnitude]() {
    Estimate t;
    magnitude = 0.0;
    for (const Interval& iv : work) {
      t.value += iv.value;
      t.error += iv.error;
      magnitude += std::abs(iv.value);
    }
    return t;
  };
  // Targets below the rounding level of the summed panels cannot be met.
  auto goal = [&](double value) {
    return std::max({cfg.abs_tol, cfg.rel_tol * std::abs(value),
                     kRoundoffFactor * std::numeric_limits<double>::epsilon() * magnitude});
  };

  // Max-heap on error; ties go to the lower index, i.e. the earlier interval.
  auto before = [&work](std::size_t x, std::size_t y) {
    return work[x].error != work[y].error ? work[x].error < work[y].error : x > y;
  };
  std::vector<std::size_t> heap(work.size());
  for (std::size_t i = 0; i < heap.size(); ++i) heap[i] = i;
  std::make_heap(heap.begin(), heap.end(), before);

  Estimate total = totals();
  int budget = cfg.max_subdivisions * std::max<int>(1, static_cast<int>(panels.size()));
  for (long iter = 1;; ++iter) {
    const double target = goal(total.value);
    if (total.error <= target) {
      // The running sums drift; confirm against a fresh total.
      total = totals();
      if (total.error <= goal(total.value)) break;
    }
    if (heap.empty() || budget-- <= 0) {
      total = totals();
      std::ostringstream os;
      os << "adaptive quadrature did not converge: error " << total.error
         << " > target " << target << " (value " << total.value << ")";
      throw ConvergenceError(os.str(), total.error);
    }
    std::pop_heap(heap.begin(), heap.end(), before);
    const std::size_t wi = heap.back();
    heap.pop_back();
    Interval& worst = work[wi];
    const double width = worst.b - worst.a;
    const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
    if (width <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
      worst.final = true;
      continue;
    }
    auto [l, r] = split(worst);
    const Estimate el = rule_on(f, l);
    const Estimate er = rule_on(f, r);
    l.value = el.value;
    l.error = el.error;
    r.value = er.value;
    r.error = er.error;
    total.value += l.value + r.value - worst.value;
    total.error += l.error + r.error - worst.error;
    work[wi] = l;
    work.push_back(r);
    heap.push_back(wi);
    std::push_heap(heap.begin(), heap.end(), before);
    heap.push_back(work.size() - 1);
    std::push_heap(heap.begin(), heap.end(), before);
    if (iter % 1024 == 0) total = totals();
  }
  // Sum in positional order so that the result does not depend on the
  // order in which intervals were refined.
  std::sort(work.begin(), work.end(), [](const Interval& x, const Interval& y) {
    return x.panel != y.panel ? x.panel < y.panel : x.a < y.a;
  });
  return totals();
}

Estimate integrate(const Integrand& f, double a, double b,
                   const QuadratureConfig& cfg) {
  const Panel p{a, b, Endpoint::kRegular};
  return integrate(f, std::span<const Panel>(&p, 1), cfg);
}

std::vector<Panel> panels_from_breakpoints(double a, double b,
                                           std::vector<double> points) {
  points.push_back(a);
  points.push_back(b);
  std::erase_if(points, [a, b](double x) { return !(x >= a && x <= b); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Panel> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    out.push_back({points[i], points[i + 1], Endpoint::kRegular});
  }
  return out;
}

Estimate wynn_epsilon(std::span<const double> s) {
  const std::size_t n = s.size();
  if (n == 0) return {};
  if (n < 3) return {s.back(), n == 2 ? std::abs(s[1] - s[0]) : 0.0};
  // Columns of the epsilon table; even columns hold the extrapolants. The
  // column whose last two entries agree best is returned.
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(s.begin(), s.end());
  Estimate best{s.back(), std::abs(s[n - 1] - s[n - 2])};
  for (std::size_t col = 1; cur.size() >= 2; ++col) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double d = cur[i + 1] - cur[i];
      if (d == 0.0) return (col % 2 == 1) ? Estimate{cur[i + 1], 0.0} : best;
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0 && cur.size() >= 2) {
      const double err = std::abs(cur.back() - cur[cur.size() - 2]);
      if (err < best.error) best = {cur.back(), err};
    }
  }
  return best;
}

}  // namespace quad
}  // namespace unruh
