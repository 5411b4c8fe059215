#pragma once

#include <string>
#include <vector>

#include "augsill/systems.hpp"

namespace augsill {

/// CSV with header `t,x1,x2`, or `t,x1,x2,dx1,dx2` when derivatives are
/// requested (the vector field evaluated at each recorded state). Other
/// state dimensions are written as x1..xm without derivatives.
std::string trajectory_to_csv(const Trajectory& traj, bool with_derivatives);
void write_trajectory_csv(const std::string& path, const Trajectory& traj, bool with_derivatives);

/// Parses a trajectory CSV with columns t,x1,...,xm and optional derivative
/// columns, which are ignored. dt is recovered from the time column, which
/// must be uniformly spaced.
Trajectory read_trajectory_csv(const std::string& path, const SystemSpec& system);

/// Reads every traj_*.csv in `dir` in name order, taking the system from
/// metadata.ini when present.
std::vector<Trajectory> read_trajectory_dir(const std::string& dir);

std::string trajectory_file_name(std::size_t index);

}  // namespace augsill
