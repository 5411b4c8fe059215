#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "augsill/dataset.hpp"
#include "augsill/dictionary.hpp"
#include "augsill/solver.hpp"

namespace augsill {

struct TrainConfig {
  int epochs = 1000;
  int batch_size = 32;
  double learning_rate = 1e-2;
  double lr_decay = 0.999;
  std::uint64_t seed = 0;
  int refit_k_every = 10;
  /// Also take gradient steps on K between refits.
  bool train_k = false;
  /// Per-dimension (lo, hi) range for initial centers; empty means the data range.
  std::vector<std::pair<double, double>> init_box;
  /// Evaluate the n-step error on eval trajectories every this many epochs.
  int eval_every = 50;
  int eval_steps = 5;
  std::optional<double> ridge;

  void validate() const;
};

struct ObjectiveGradient {
  double loss = 0.0;
  Eigen::MatrixXd dK;
  /// N x m; empty for polynomial dictionaries.
  Eigen::MatrixXd d_center;
  Eigen::MatrixXd d_steepness;
};

/// Mean squared one-step lifted residual on a batch of discrete pairs, with
/// its gradient with respect to K and every member center and steepness.
ObjectiveGradient objective_and_gradient(const KoopmanModel& model, const SnapshotDataset& batch);

/// Mean squared lifted residual only.
double objective(const KoopmanModel& model, const SnapshotDataset& data);

/// Members drawn for SGD initialization: centers uniform in the box,
/// steepness log-uniform on [0.5, 3]. AugSILL splits N into N - N/2
/// logistic and N/2 RBF members.
Dictionary random_dictionary(DictionaryFamily family, int m, int N,
                             const std::vector<std::pair<double, double>>& box, std::uint64_t seed);

/// Per-dimension min/max of the dataset inputs.
std::vector<std::pair<double, double>> data_range(const SnapshotDataset& data);

struct TrainLogEntry {
  int epoch = 0;
  double loss = 0.0;
  std::optional<double> five_step_error;
};

struct SgdResult {
  KoopmanModel model;
  /// Full-dataset loss after initialization (entry 0) and after each epoch.
  std::vector<double> loss_history;
  std::vector<TrainLogEntry> log;
};

/// Adam steps on (center, log steepness) with periodic closed-form K refits.
/// Polynomial families only get the closed-form K. `eval` trajectories, when
/// given, feed the periodic n-step error in the log.
SgdResult sgd_fit(const SnapshotDataset& data, DictionaryFamily family, int N,
                  const TrainConfig& cfg, const std::vector<Trajectory>* eval = nullptr);

struct PursuitPool {
  std::vector<BasisKind> kinds{BasisKind::Logistic, BasisKind::Rbf};
  /// Lattice coordinates for each measurement dimension.
  std::vector<std::vector<double>> centers;
  std::vector<double> steepness_levels{1.0, 3.0, 10.0};

  /// `points` evenly spaced centers per dimension spanning the data range.
  static PursuitPool standard(const SnapshotDataset& data, int points = 9);

  std::size_t lattice_size() const;
  std::size_t size() const;
  int m() const noexcept { return static_cast<int>(centers.size()); }
  /// Candidate `index`; kind varies slowest, then steepness, then the lattice
  /// with the last dimension fastest.
  ConjunctiveFunction candidate(std::size_t index) const;
};

enum class PursuitObjective {
  /// Residual of the constant and state rows; nested, so never increases.
  MeasurementRows,
  /// Full lifted residual with every candidate refit from scratch.
  AllRows,
};

struct PursuitResult {
  KoopmanModel model;
  /// Objective after each addition.
  std::vector<double> trace;
  /// Pool indices in the order they were picked.
  std::vector<std::size_t> picks;
};

/// Greedy selection of N members from the pool. `ridge` regularizes both the
/// selection objective and the final K; nullopt selects with no ridge and
/// fits the final K with the default ridge.
PursuitResult matching_pursuit_fit(const SnapshotDataset& data, const PursuitPool& pool, int N,
                                   std::optional<double> ridge = std::nullopt,
                                   PursuitObjective objective = PursuitObjective::MeasurementRows);

}  // namespace augsill
