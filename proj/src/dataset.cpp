#include "augsill/dataset.hpp"

#include <string>

#include "augsill/errors.hpp"

namespace augsill {

std::string_view to_string(DataMode mode) {
  return mode == DataMode::DiscretePairs ? "discrete" : "continuous";
}

DataMode data_mode_from_string(std::string_view name) {
  if (name == "discrete") return DataMode::DiscretePairs;
  if (name == "continuous") return DataMode::ContinuousDerivatives;
  throw ConfigError("unknown data mode '" + std::string(name) + "'");
}

SnapshotDataset SnapshotDataset::subset(const std::vector<Eigen::Index>& rows) const {
  SnapshotDataset out;
  out.mode = mode;
  out.dt = dt;
  out.inputs.resize(static_cast<Eigen::Index>(rows.size()), inputs.cols());
  out.targets.resize(out.inputs.rows(), targets.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.inputs.row(static_cast<Eigen::Index>(k)) = inputs.row(rows[k]);
    out.targets.row(static_cast<Eigen::Index>(k)) = targets.row(rows[k]);
  }
  return out;
}

void validate(const SnapshotDataset& data) {
  if (data.inputs.rows() < 1) throw ShapeError("dataset has no rows");
  if (data.inputs.rows() != data.targets.rows() || data.inputs.cols() != data.targets.cols())
    throw ShapeError("dataset inputs and targets differ in shape");
  if (!data.inputs.allFinite() || !data.targets.allFinite())
    throw DataError("dataset contains non-finite values");
}

SnapshotDataset build_snapshot_dataset(const std::vector<Trajectory>& trajectories, DataMode mode) {
  if (trajectories.empty()) throw ConfigError("no trajectories given");
  const auto& first = trajectories.front();
  const Eigen::Index m = first.states.cols();
  const Eigen::Index lost = mode == DataMode::DiscretePairs ? 1 : 2;
  Eigen::Index rows = 0;
  for (const auto& t : trajectories) {
    if (t.dt != first.dt) throw ConfigError("trajectories have different dt");
    if (!(t.system == first.system)) throw ConfigError("trajectories come from different systems");
    if (t.states.cols() != m) throw ConfigError("trajectories have different state dimension");
    rows += std::max<Eigen::Index>(0, t.length() - lost);
  }
  if (rows == 0) throw ConfigError("trajectories too short for the requested mode");

  SnapshotDataset out;
  out.mode = mode;
  out.dt = first.dt;
  out.inputs.resize(rows, m);
  out.targets.resize(rows, m);
  Eigen::Index r = 0;
  for (const auto& t : trajectories) {
    if (mode == DataMode::DiscretePairs) {
      for (Eigen::Index k = 0; k + 1 < t.length(); ++k, ++r) {
        out.inputs.row(r) = t.states.row(k);
        out.targets.row(r) = t.states.row(k + 1);
      }
    } else {
      for (Eigen::Index k = 1; k + 1 < t.length(); ++k, ++r) {
        out.inputs.row(r) = t.states.row(k);
        out.targets.row(r) = (t.states.row(k + 1) - t.states.row(k - 1)) / (2.0 * t.dt);
      }
    }
  }
  validate(out);
  return out;
}

SnapshotDataset exact_derivative_dataset(const SystemSpec& s, const Eigen::MatrixXd& states) {
  SnapshotDataset out;
  out.mode = DataMode::ContinuousDerivatives;
  out.inputs = states;
  out.targets.resize(states.rows(), states.cols());
  for (Eigen::Index r = 0; r < states.rows(); ++r)
    out.targets.row(r) = system_rhs(s, states.row(r).transpose()).transpose();
  validate(out);
  return out;
}

}  // namespace augsill
