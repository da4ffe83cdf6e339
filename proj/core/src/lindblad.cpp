#include "unruh/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "unruh/errors.hpp"

namespace unruh::lindblad {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

Mat lowering(int atom, int n_atoms) {
  const int dim = 1 << n_atoms;
  Mat s = Mat::Zero(dim, dim);
  for (int idx = 0; idx < dim; ++idx)
    if (idx & (1 << atom)) s(idx ^ (1 << atom), idx) = 1.0;
  return s;
}

struct Channels {
  std::vector<Mat> ops;  // sqrt(lambda_k) sum_j v_kj L_j
  double clipped = 0.0;
};

Channels diagonalize(const Eigen::MatrixXd& rates, const std::vector<Mat>& jumps, const char* name) {
  Channels c;
  if (rates.size() == 0 || rates.isZero(0.0)) return c;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (rates + rates.transpose()));
  const double scale = std::max(rates.diagonal().cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin < -1e-10 * scale)
    throw DomainError(std::string("lindblad: ") + name + " matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(lmin) + ")");
  c.clipped = std::max(0.0, -lmin);
  const auto n = rates.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam <= 0.0) continue;
    Mat op = Mat::Zero(jumps[0].rows(), jumps[0].cols());
    for (Eigen::Index j = 0; j < n; ++j) op += es.eigenvectors()(j, k) * jumps[static_cast<std::size_t>(j)];
    c.ops.push_back(std::sqrt(lam) * op);
  }
  return c;
}

Mat pair_sum(const Eigen::MatrixXd& coef, const std::vector<Mat>& left, const std::vector<Mat>& right) {
  const auto n = static_cast<Eigen::Index>(left.size());
  Mat m = Mat::Zero(left[0].rows(), left[0].cols());
  if (coef.size() == 0) return m;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (coef(i, j) != 0.0) m += coef(i, j) * (left[i] * right[j]);
  return m;
}

struct Generator {
  Mat K;  // H - (i/2) sum of L^dag L
  std::vector<Mat> jumps;
  std::vector<Mat> jumps_adj;

  Mat operator()(const Mat& rho) const {
    const cd mi(0.0, -1.0);
    Mat out = mi * (K * rho) - mi * (rho * K.adjoint());
    for (std::size_t k = 0; k < jumps.size(); ++k) out.noalias() += jumps[k] * rho * jumps_adj[k];
    return out;
  }
};

Mat rk4(const Generator& L, const Mat& y, double h) {
  const Mat k1 = L(y);
  const Mat k2 = L(y + 0.5 * h * k1);
  const Mat k3 = L(y + 0.5 * h * k2);
  const Mat k4 = L(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Mat product_state(int n_atoms, double theta0, double phi0) {
  const cd e = std::sin(0.5 * theta0) * std::exp(cd(0.0, -0.5 * phi0));
  const cd g = std::cos(0.5 * theta0) * std::exp(cd(0.0, 0.5 * phi0));
  const int dim = 1 << n_atoms;
  Eigen::VectorXcd psi(dim);
  for (int idx = 0; idx < dim; ++idx) {
    cd a = 1.0;
    for (int i = 0; i < n_atoms; ++i) a *= (idx & (1 << i)) ? e : g;
    psi(idx) = a;
  }
  return psi * psi.adjoint();
}

}  // namespace

response::RateMatrix dicke_matrix(int n_atoms, double gamma) {
  response::RateMatrix rm;
  rm.gamma = Eigen::MatrixXd::Constant(n_atoms, n_atoms, gamma);
  rm.chi = Eigen::MatrixXd::Zero(n_atoms, n_atoms);
  rm.omega = Eigen::MatrixXd::Zero(n_atoms, n_atoms);
  rm.gamma_error = Eigen::MatrixXd::Zero(n_atoms, n_atoms);
  rm.omega_error = Eigen::MatrixXd::Zero(n_atoms, n_atoms);
  return rm;
}

EvolveResult evolve(const response::RateMatrix& rm, double theta0, double phi0, const std::vector<double>& tau_grid,
                    const StepControl& ctl) {
  const int N = rm.size();
  if (N < 1 || N > kMaxAtoms) throw DomainError("lindblad: need 1 <= N <= " + std::to_string(kMaxAtoms));
  if (!(theta0 >= 0.0 && theta0 <= M_PI)) throw DomainError("lindblad: theta0 must lie in [0, pi]");
  if (!(ctl.tol > 0.0 && ctl.initial_step > 0.0 && ctl.min_step > 0.0)) throw DomainError("lindblad: bad step control");
  for (std::size_t i = 1; i < tau_grid.size(); ++i)
    if (!(tau_grid[i] > tau_grid[i - 1])) throw DomainError("lindblad: tau grid must be strictly increasing");
  if (!tau_grid.empty() && tau_grid.front() < 0.0) throw DomainError("lindblad: tau grid must start at >= 0");

  std::vector<Mat> lower, raise;
  for (int i = 0; i < N; ++i) {
    lower.push_back(lowering(i, N));
    raise.push_back(lower.back().adjoint());
  }
  const Eigen::MatrixXd chi = rm.chi.size() ? rm.chi : Eigen::MatrixXd::Zero(N, N);
  const Eigen::MatrixXd omega = rm.omega.size() ? rm.omega : Eigen::MatrixXd::Zero(N, N);

  const Channels em = diagonalize(rm.gamma, lower, "gamma");
  const Channels ab = diagonalize(chi, raise, "chi");

  Generator L;
  L.K = pair_sum(omega, raise, lower);
  for (const auto* ch : {&em, &ab})
    for (const Mat& op : ch->ops) {
      L.jumps.push_back(op);
      L.jumps_adj.push_back(op.adjoint());
      L.K -= cd(0.0, 0.5) * (op.adjoint() * op);
    }
  const Mat emit = pair_sum(rm.gamma, raise, lower) - pair_sum(chi, lower, raise);

  EvolveResult res;
  res.psd_projection = std::max(em.clipped, ab.clipped);
  res.profile.provenance = collective::Provenance::kOracle;
  res.trajectory.n_atoms = N;

  Mat rho = product_state(N, theta0, phi0);
  double t = 0.0, h = ctl.initial_step;
  double min_eig = std::numeric_limits<double>::infinity();

  auto record = [&](double tau) {
    const cd tr = rho.trace();
    res.max_trace_error = std::max(res.max_trace_error, std::abs(tr - 1.0));
    if (res.max_trace_error > 1e-9)
      throw ConvergenceError("lindblad: trace drifted at tau = " + std::to_string(tau), res.max_trace_error);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    if (min_eig < -1e-8)
      throw ConvergenceError("lindblad: state lost positivity at tau = " + std::to_string(tau) +
                                 "; check the rate matrix or tighten the step control",
                             -min_eig);
    res.profile.tau_grid.push_back(tau);
    res.profile.rate_samples.push_back((emit * rho).trace().real());
    if (ctl.keep_states) {
      res.trajectory.tau.push_back(tau);
      res.trajectory.states.push_back(rho);
    }
  };

  for (double target : tau_grid) {
    while (t < target) {
      const double step = std::min(h, target - t);
      const Mat full = rk4(L, rho, step);
      const Mat half = rk4(L, rk4(L, rho, 0.5 * step), 0.5 * step);
      const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;
      ++res.steps;
      if (err <= ctl.tol) {
        rho = half + (half - full) / 15.0;
        t = (step == target - t) ? target : t + step;
        const double grow = err > 0.0 ? 0.9 * std::pow(ctl.tol / err, 0.2) : 2.0;
        if (step == h) h *= std::min(2.0, grow);
      } else {
        h = step * std::max(0.1, 0.9 * std::pow(ctl.tol / err, 0.2));
        if (h < ctl.min_step)
          throw ConvergenceError("lindblad: step size underflow at tau = " + std::to_string(t), err);
      }
    }
    record(target);
  }
  res.min_state_eigenvalue = min_eig;
  return res;
}

PairCorrelators pair_correlators(const Trajectory& traj) {
  const int N = traj.n_atoms;
  if (traj.states.empty()) throw DomainError("pair_correlators: trajectory holds no states");
  std::vector<Mat> lower, sz;
  for (int i = 0; i < N; ++i) {
    lower.push_back(lowering(i, N));
    sz.push_back(2.0 * lower.back().adjoint() * lower.back() - Mat::Identity(1 << N, 1 << N));
  }
  PairCorrelators out;
  out.tau = traj.tau;
  for (const Mat& rho : traj.states) {
    Mat coh(N, N);
    Eigen::VectorXd z(N);
    for (int i = 0; i < N; ++i) z(i) = (sz[i] * rho).trace().real();
    Eigen::MatrixXd res = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        coh(i, j) = (lower[i].adjoint() * lower[j] * rho).trace();
        if (i != j) res(i, j) = (sz[i] * sz[j] * rho).trace().real() - z(i) * z(j);
      }
    out.coherence.push_back(coh);
    out.max_residual.push_back(res.cwiseAbs().maxCoeff());
    out.zz_residual.push_back(std::move(res));
  }
  return out;
}

}  // namespace unruh::lindblad
