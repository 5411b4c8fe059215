#pragma once

#include <string>
#include <vector>

#include "augsill/dictionary.hpp"
#include "augsill/systems.hpp"
#include "augsill/trainer.hpp"

namespace augsill {

struct CompareConfig {
  std::vector<SystemId> systems{SystemId::VanDerPol, SystemId::Duffing, SystemId::PredatorPrey,
                                SystemId::ToggleSwitch};
  std::vector<DictionaryFamily> families{DictionaryFamily::SILL, DictionaryFamily::AugSILL,
                                         DictionaryFamily::SummedRbf, DictionaryFamily::Legendre,
                                         DictionaryFamily::Hermite};
  std::vector<int> dims{5, 10, 20};
  std::vector<std::uint64_t> seeds{0, 1, 2};
  SimulationConfig simulation;
  /// Held-out trajectories the n-step error is measured on.
  int eval_trajectories = 10;
  TrainConfig train;
  int n_steps = 5;
  bool include_dmd = true;
  unsigned workers = 1;
};

struct CompareRow {
  SystemId system = SystemId::VanDerPol;
  /// Family name, or "dmd" for the baseline.
  std::string dictionary;
  int N = 0;
  int n_steps = 5;
  double error = 0.0;
  std::uint64_t seed = 0;
};

/// Training and held-out evaluation trajectories for one system and seed.
struct ExperimentData {
  std::vector<Trajectory> train;
  std::vector<Trajectory> eval;
};

ExperimentData make_experiment_data(SystemId system, const SimulationConfig& sim,
                                    int eval_trajectories, std::uint64_t seed);

/// Grid of SGD fits over systems x families x dims x seeds, each scored by
/// the n-step error on held-out trajectories. Rows are ordered by system,
/// seed, then DMD followed by families x dims.
std::vector<CompareRow> run_compare(const CompareConfig& cfg);

struct MedianRow {
  SystemId system = SystemId::VanDerPol;
  std::string dictionary;
  int N = 0;
  double median_error = 0.0;
  int seeds = 0;
};

std::vector<MedianRow> median_errors(const std::vector<CompareRow>& rows);

double median(std::vector<double> values);

}  // namespace augsill
