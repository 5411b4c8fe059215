#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace augsill {

enum class SystemId { VanDerPol, Duffing, PredatorPrey, ToggleSwitch };

std::string_view to_string(SystemId id);
SystemId system_id_from_string(std::string_view name);

/// Benchmark vector field with its constants. Constant order per system:
///   VanDerPol    c1
///   Duffing      c2 c3 c4
///   PredatorPrey c5 c6 c7 c8
///   ToggleSwitch c9 c10 c11 c12 c13
struct SystemSpec {
  SystemId id = SystemId::VanDerPol;
  std::vector<double> constants;

  static SystemSpec standard(SystemId id);
  int state_dim() const noexcept { return 2; }

  /// Box [lo, hi]^2 that initial conditions are drawn from.
  std::pair<double, double> initial_box() const;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

Eigen::Vector2d system_rhs(const SystemSpec& s, const Eigen::Vector2d& x);

struct Trajectory {
  double dt = 0.0;
  /// One state per row, rows sampled every dt starting at t = 0.
  Eigen::MatrixXd states;
  SystemSpec system;
  std::uint64_t seed = 0;

  Eigen::Index length() const noexcept { return states.rows(); }
};

inline constexpr double kDefaultMaxSubstep = 1e-3;
inline constexpr double kDivergenceThreshold = 1e9;

/// Classical RK4 with a fixed internal step no larger than max_substep,
/// recording the state every dt. Returns steps + 1 states.
Trajectory integrate(const SystemSpec& s, const Eigen::Vector2d& x0, double dt, int steps,
                     double max_substep = kDefaultMaxSubstep);

struct SimulationConfig {
  double dt = 0.1;
  int steps = 50;
  int trajectories = 40;
  std::uint64_t seed = 0;
  /// Separates independent draws made from the same seed.
  std::uint64_t salt = 0;
  unsigned workers = 1;
};

/// Integrates cfg.trajectories trajectories from initial states uniform in
/// the system's box; trajectory k uses its own stream derived from (seed, k).
std::vector<Trajectory> simulate(const SystemSpec& s, const SimulationConfig& cfg);

inline constexpr std::uint64_t kEvaluationSalt = 0xE7A1;

}  // namespace augsill
