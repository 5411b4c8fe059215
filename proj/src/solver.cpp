#include "augsill/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "augsill/errors.hpp"
#include "augsill/parallel.hpp"

namespace augsill {

LiftedData lift_dataset(const SnapshotDataset& data, const Dictionary& d) {
  validate(data);
  if (data.m() != d.m())
    throw ShapeError("dataset has " + std::to_string(data.m()) + " states, dictionary expects " +
                     std::to_string(d.m()));
  LiftedData out;
  out.X = lift_rows(d, data.inputs);
  if (data.mode == DataMode::DiscretePairs) {
    out.Y = lift_rows(d, data.targets);
  } else {
    out.Y.resize(data.rows(), d.lifted_dim());
    for (Eigen::Index r = 0; r < data.rows(); ++r)
      out.Y.row(r) = (lift_jacobian(d, data.inputs.row(r).transpose()) *
                      data.targets.row(r).transpose())
                         .transpose();
  }
  if (!out.X.allFinite() || !out.Y.allFinite()) throw DataError("lifted data is not finite");
  return out;
}

double default_ridge(const Eigen::MatrixXd& X) {
  if (X.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X.transpose() * X, Eigen::EigenvaluesOnly);
  return 1e-8 * std::max(0.0, eig.eigenvalues().maxCoeff());
}

Eigen::MatrixXd solve_koopman(const LiftedData& lifted, double ridge, FitDiagnostics* diagnostics) {
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw ConfigError("ridge must be finite and >= 0");
  const auto& X = lifted.X;
  const auto& Y = lifted.Y;
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw ShapeError("lifted data shape mismatch");
  const Eigen::Index n = X.cols();

  Eigen::MatrixXd A = X;
  Eigen::MatrixXd B = Y;
  if (ridge > 0.0) {
    A.conservativeResize(X.rows() + n, n);
    A.bottomRows(n) = std::sqrt(ridge) * Eigen::MatrixXd::Identity(n, n);
    B.conservativeResize(Y.rows() + n, n);
    B.bottomRows(n).setZero();
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  const Eigen::MatrixXd Kt = cod.solve(B);
  if (!Kt.allFinite()) throw NumericalError("Koopman solve produced non-finite entries");

  if (diagnostics) {
    diagnostics->ridge = ridge;
    diagnostics->underdetermined = X.rows() < n;
    if (ridge > 0.0) {
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> plain(X);
      diagnostics->rank = plain.rank();
    } else {
      diagnostics->rank = cod.rank();
    }
    diagnostics->rank_deficient = diagnostics->rank < n;
  }
  return Kt.transpose();
}

KoopmanModel fit_k(const SnapshotDataset& data, const Dictionary& d, std::optional<double> ridge) {
  const LiftedData lifted = lift_dataset(data, d);
  KoopmanModel model;
  model.dictionary = d;
  model.mode = data.mode;
  model.dt = data.dt;
  const double r = ridge ? *ridge : default_ridge(lifted.X);
  model.K = solve_koopman(lifted, r, &model.diagnostics);
  return model;
}

double fit_residual(const KoopmanModel& model, const SnapshotDataset& data) {
  if (data.mode != model.mode) throw ConfigError("dataset mode differs from model mode");
  const LiftedData lifted = lift_dataset(data, model.dictionary);
  return (lifted.Y - lifted.X * model.K.transpose()).squaredNorm();
}

KoopmanModel dmd_baseline(const SnapshotDataset& data) {
  validate(data);
  if (data.mode != DataMode::DiscretePairs) throw ConfigError("DMD baseline needs discrete pairs");
  const Eigen::Index m = data.m();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(data.inputs);
  const Eigen::MatrixXd At = cod.solve(data.targets);
  if (!At.allFinite()) throw NumericalError("DMD solve produced non-finite entries");

  KoopmanModel model;
  model.dictionary = Dictionary::identity(static_cast<int>(m));
  model.mode = DataMode::DiscretePairs;
  model.dt = data.dt;
  model.K = Eigen::MatrixXd::Zero(m + 1, m + 1);
  model.K(0, 0) = 1.0;
  model.K.bottomRightCorner(m, m) = At.transpose();
  model.diagnostics.rank = cod.rank();
  model.diagnostics.rank_deficient = cod.rank() < m;
  model.diagnostics.underdetermined = data.rows() < m;
  return model;
}

Eigen::MatrixXd step_matrix(const KoopmanModel& model) {
  if (model.mode == DataMode::DiscretePairs) return model.K;
  if (!(model.dt > 0.0)) throw ConfigError("continuous model needs a positive dt for rollout");
  const Eigen::MatrixXd scaled = model.K * model.dt;
  Eigen::MatrixXd out = scaled.exp();
  if (!out.allFinite()) throw NumericalError("matrix exponential overflowed");
  return out;
}

namespace {

std::vector<Eigen::VectorXd> rollout(const KoopmanModel& model, const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& y0, int n) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  Eigen::VectorXd z = lift(model.dictionary, y0);
  out.push_back(y0);
  for (int k = 1; k <= n; ++k) {
    z = A * z;
    out.push_back(model.project(z));
  }
  return out;
}

}  // namespace

std::vector<Eigen::VectorXd> predict_n_steps(const KoopmanModel& model, const Eigen::VectorXd& y0,
                                             int n) {
  if (n < 0) throw ConfigError("number of steps must be nonnegative");
  return rollout(model, step_matrix(model), y0, n);
}

std::vector<double> n_step_window_errors(const KoopmanModel& model,
                                         const std::vector<Trajectory>& trajectories, int n,
                                         unsigned workers) {
  if (n < 1) throw ConfigError("n must be at least 1");
  const Eigen::MatrixXd A = step_matrix(model);
  std::vector<std::vector<double>> per(trajectories.size());
  parallel_for(trajectories.size(), workers, [&](std::size_t j) {
    const auto& states = trajectories[j].states;
    if (states.cols() != model.m()) throw ShapeError("trajectory dimension differs from model");
    for (Eigen::Index t = 0; t + n < states.rows(); ++t) {
      const auto pred = rollout(model, A, states.row(t).transpose(), n);
      const Eigen::VectorXd truth = states.row(t + n).transpose();
      const double err = (pred.back() - truth).norm() / (truth.norm() + 1e-8);
      per[j].push_back(std::isfinite(err) ? err : std::numeric_limits<double>::infinity());
    }
  });
  std::vector<double> out;
  for (const auto& v : per) out.insert(out.end(), v.begin(), v.end());
  if (out.empty()) throw DataError("no trajectory is longer than the prediction horizon");
  return out;
}

double n_step_error(const KoopmanModel& model, const std::vector<Trajectory>& trajectories, int n,
                    unsigned workers) {
  const auto errs = n_step_window_errors(model, trajectories, n, workers);
  double sum = 0.0;
  for (double e : errs) sum += e;
  return sum / static_cast<double>(errs.size());
}

}  // namespace augsill
