#pragma once

#include <vector>

#include <Eigen/Dense>

#include "unruh/collective.hpp"
#include "unruh/response.hpp"

namespace unruh::lindblad {

inline constexpr int kMaxAtoms = 6;

struct StepControl {
  double tol = 1e-11;
  double initial_step = 1e-3;
  double min_step = 1e-12;
  bool keep_states = true;
};

struct Trajectory {
  int n_atoms = 0;
  std::vector<double> tau;
  std::vector<Eigen::MatrixXcd> states;
};

struct EvolveResult {
  collective::EmissionProfile profile;
  Trajectory trajectory;
  // Largest eigenvalue clipped from gamma or chi to make them PSD.
  double psd_projection = 0.0;
  double max_trace_error = 0.0;
  double min_state_eigenvalue = 0.0;
  long steps = 0;
};

/// Dense master-equation evolution from the product state (theta0, phi0) on
/// every atom. Basis index bit i set means atom i excited.
EvolveResult evolve(const response::RateMatrix& rm, double theta0, double phi0, const std::vector<double>& tau_grid,
                    const StepControl& ctl = {});

/// Matrix with the given entries on all off-diagonals and gamma on the
/// diagonal; omega and chi zero.
response::RateMatrix dicke_matrix(int n_atoms, double gamma);

struct PairCorrelators {
  std::vector<double> tau;
  // <sigma_i^+ sigma_j^->
  std::vector<Eigen::MatrixXcd> coherence;
  // <sz_i sz_j> - <sz_i><sz_j>, zero on the diagonal.
  std::vector<Eigen::MatrixXd> zz_residual;
  std::vector<double> max_residual;
};

PairCorrelators pair_correlators(const Trajectory& traj);

}  // namespace unruh::lindblad
