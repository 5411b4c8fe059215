#include "augsill/systems.hpp"

#include <cmath>
#include <string>

#include "augsill/errors.hpp"
#include "augsill/parallel.hpp"
#include "augsill/random.hpp"

namespace augsill {

std::string_view to_string(SystemId id) {
  switch (id) {
    case SystemId::VanDerPol: return "vanderpol";
    case SystemId::Duffing: return "duffing";
    case SystemId::PredatorPrey: return "predatorprey";
    case SystemId::ToggleSwitch: return "toggleswitch";
  }
  return "unknown";
}

SystemId system_id_from_string(std::string_view name) {
  for (auto id : {SystemId::VanDerPol, SystemId::Duffing, SystemId::PredatorPrey,
                  SystemId::ToggleSwitch})
    if (to_string(id) == name) return id;
  if (name == "toggle") return SystemId::ToggleSwitch;
  throw ConfigError("unknown system '" + std::string(name) + "'");
}

SystemSpec SystemSpec::standard(SystemId id) {
  switch (id) {
    case SystemId::VanDerPol: return {id, {1.0}};
    case SystemId::Duffing: return {id, {0.0, -1.0, 1.0}};
    case SystemId::PredatorPrey: return {id, {1.1, 0.5, 0.1, 0.2}};
    case SystemId::ToggleSwitch: return {id, {2.5, 1.5, 1.4, 1.1, 0.25}};
  }
  throw ConfigError("unknown system");
}

std::pair<double, double> SystemSpec::initial_box() const {
  switch (id) {
    case SystemId::VanDerPol:
    case SystemId::Duffing: return {-2.0, 2.0};
    case SystemId::PredatorPrey: return {0.5, 3.0};
    case SystemId::ToggleSwitch: return {0.0, 4.0};
  }
  return {0.0, 1.0};
}

namespace {

std::size_t expected_constants(SystemId id) {
  switch (id) {
    case SystemId::VanDerPol: return 1;
    case SystemId::Duffing: return 3;
    case SystemId::PredatorPrey: return 4;
    case SystemId::ToggleSwitch: return 5;
  }
  return 0;
}

}  // namespace

Eigen::Vector2d system_rhs(const SystemSpec& s, const Eigen::Vector2d& x) {
  const auto& c = s.constants;
  if (c.size() != expected_constants(s.id))
    throw ConfigError("wrong number of constants for " + std::string(to_string(s.id)));
  const double x1 = x[0], x2 = x[1];
  switch (s.id) {
    case SystemId::VanDerPol:
      return {x2, -x1 + c[0] * (1.0 - x1 * x1) * x2};
    case SystemId::Duffing:
      return {x2, -c[0] * x2 - c[1] * x1 - c[2] * x1 * x1 * x1};
    case SystemId::PredatorPrey:
      return {c[0] * x1 - c[1] * x1 * x2, c[2] * x1 * x2 - c[3] * x2};
    case SystemId::ToggleSwitch:
      if (x1 < 0.0 || x2 < 0.0)
        throw DomainError("toggle switch state must be nonnegative");
      return {c[0] / (1.0 + std::pow(x2, c[2])) - c[4] * x1,
              c[1] / (1.0 + std::pow(x1, c[3])) - c[4] * x2};
  }
  throw ConfigError("unknown system");
}

Trajectory integrate(const SystemSpec& s, const Eigen::Vector2d& x0, double dt, int steps,
                     double max_substep) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (steps < 1) throw ConfigError("steps must be at least 1");
  if (!(max_substep > 0.0)) throw ConfigError("substep must be positive");
  if (!x0.allFinite()) throw DomainError("initial state must be finite");

  const auto sub = static_cast<int>(std::ceil(dt / max_substep - 1e-9));
  const double h = dt / sub;

  Trajectory traj;
  traj.dt = dt;
  traj.system = s;
  traj.states.resize(steps + 1, 2);
  traj.states.row(0) = x0.transpose();
  Eigen::Vector2d x = x0;
  for (int k = 1; k <= steps; ++k) {
    for (int j = 0; j < sub; ++j) {
      const Eigen::Vector2d k1 = system_rhs(s, x);
      const Eigen::Vector2d k2 = system_rhs(s, x + 0.5 * h * k1);
      const Eigen::Vector2d k3 = system_rhs(s, x + 0.5 * h * k2);
      const Eigen::Vector2d k4 = system_rhs(s, x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceThreshold)
        throw DivergenceError("trajectory diverged at step " + std::to_string(k),
                              static_cast<std::size_t>(k));
    }
    traj.states.row(k) = x.transpose();
  }
  return traj;
}

std::vector<Trajectory> simulate(const SystemSpec& s, const SimulationConfig& cfg) {
  if (cfg.trajectories < 1) throw ConfigError("need at least one trajectory");
  std::vector<Trajectory> out(static_cast<std::size_t>(cfg.trajectories));
  const auto [lo, hi] = s.initial_box();
  parallel_for(out.size(), cfg.workers, [&](std::size_t k) {
    Rng rng(cfg.seed, k, cfg.salt);
    Eigen::Vector2d x0;
    x0[0] = rng.uniform(lo, hi);
    x0[1] = rng.uniform(lo, hi);
    out[k] = integrate(s, x0, cfg.dt, cfg.steps);
    out[k].seed = cfg.seed;
  });
  return out;
}

}  // namespace augsill
