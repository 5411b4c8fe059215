#pragma once

#include <vector>

#include <Eigen/Dense>

#include "augsill/systems.hpp"

namespace augsill {

enum class DataMode { DiscretePairs, ContinuousDerivatives };

std::string_view to_string(DataMode mode);
DataMode data_mode_from_string(std::string_view name);

/// Rows of `inputs` pair with rows of `targets`: successor states for
/// DiscretePairs, derivative estimates for ContinuousDerivatives.
struct SnapshotDataset {
  DataMode mode = DataMode::DiscretePairs;
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd targets;
  double dt = 0.0;

  Eigen::Index rows() const noexcept { return inputs.rows(); }
  int m() const noexcept { return static_cast<int>(inputs.cols()); }

  /// Rows selected by index, in the given order.
  SnapshotDataset subset(const std::vector<Eigen::Index>& rows) const;
};

/// Throws ShapeError on mismatched shapes or no rows and DataError on non-finite entries.
void validate(const SnapshotDataset& data);

SnapshotDataset build_snapshot_dataset(const std::vector<Trajectory>& trajectories, DataMode mode);

/// Continuous-mode dataset with exact derivatives f(x) at the given states.
SnapshotDataset exact_derivative_dataset(const SystemSpec& s, const Eigen::MatrixXd& states);

}  // namespace augsill
