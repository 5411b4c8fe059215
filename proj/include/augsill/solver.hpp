#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "augsill/dataset.hpp"
#include "augsill/dictionary.hpp"

namespace augsill {

struct FitDiagnostics {
  double ridge = 0.0;
  /// Numerical rank of the (unregularized) lifted input matrix.
  Eigen::Index rank = 0;
  bool rank_deficient = false;
  bool underdetermined = false;
};

/// Dictionary plus the finite Koopman matrix. In ContinuousDerivatives mode
/// K approximates the generator and rollouts use exp(K dt).
struct KoopmanModel {
  Dictionary dictionary = Dictionary::identity(1);
  Eigen::MatrixXd K;
  DataMode mode = DataMode::DiscretePairs;
  double dt = 0.0;
  FitDiagnostics diagnostics;

  int m() const noexcept { return dictionary.m(); }
  /// Rows 1..m of a lifted vector hold the state.
  Eigen::VectorXd project(const Eigen::VectorXd& z) const { return z.segment(1, m()); }
};

/// Lifted regression pair: rows of X are psi(y), rows of Y the lifted targets
/// (psi(y') for pairs, J(y) dy/dt for derivatives).
struct LiftedData {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;
};

LiftedData lift_dataset(const SnapshotDataset& data, const Dictionary& d);

/// Ridge parameter used when none is given: 1e-8 times the largest squared
/// singular value of X.
double default_ridge(const Eigen::MatrixXd& X);

/// K minimizing ||Y - X K^T||_F^2 + ridge ||K||_F^2, via a complete
/// orthogonal decomposition (minimum-norm when rank deficient).
Eigen::MatrixXd solve_koopman(const LiftedData& lifted, double ridge,
                              FitDiagnostics* diagnostics = nullptr);

/// ridge = nullopt selects default_ridge.
KoopmanModel fit_k(const SnapshotDataset& data, const Dictionary& d,
                   std::optional<double> ridge = std::nullopt);

/// ||Y - X K^T||_F^2 of the model on the dataset.
double fit_residual(const KoopmanModel& model, const SnapshotDataset& data);

/// Least-squares x' = A x on raw states, packaged with the [1, y] dictionary.
KoopmanModel dmd_baseline(const SnapshotDataset& data);

/// One-step propagator: K, or exp(K dt) for continuous models.
Eigen::MatrixXd step_matrix(const KoopmanModel& model);

/// States at steps 0..n of the linear rollout z_{k+1} = A z_k, z_0 = psi(y0).
std::vector<Eigen::VectorXd> predict_n_steps(const KoopmanModel& model,
                                             const Eigen::VectorXd& y0, int n);

/// Relative n-step errors for every admissible window, trajectory-major.
std::vector<double> n_step_window_errors(const KoopmanModel& model,
                                         const std::vector<Trajectory>& trajectories, int n,
                                         unsigned workers = 1);

double n_step_error(const KoopmanModel& model, const std::vector<Trajectory>& trajectories, int n,
                    unsigned workers = 1);

}  // namespace augsill
