#include "augsill/experiment.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "augsill/errors.hpp"
#include "augsill/parallel.hpp"

namespace augsill {

ExperimentData make_experiment_data(SystemId system, const SimulationConfig& sim,
                                    int eval_trajectories, std::uint64_t seed) {
  const SystemSpec spec = SystemSpec::standard(system);
  SimulationConfig train = sim;
  train.seed = seed;
  train.salt = 0;
  SimulationConfig eval = sim;
  eval.seed = seed;
  eval.salt = kEvaluationSalt;
  eval.trajectories = eval_trajectories;
  return {simulate(spec, train), simulate(spec, eval)};
}

std::vector<CompareRow> run_compare(const CompareConfig& cfg) {
  if (cfg.eval_trajectories < 1) throw ConfigError("need at least one evaluation trajectory");
  struct Cell {
    std::size_t data;
    bool dmd;
    DictionaryFamily family;
    int N;
  };
  std::vector<std::pair<SystemId, std::uint64_t>> datasets;
  std::vector<Cell> cells;
  for (auto system : cfg.systems)
    for (auto seed : cfg.seeds) {
      datasets.emplace_back(system, seed);
      if (cfg.include_dmd) cells.push_back({datasets.size() - 1, true, DictionaryFamily::SILL, 0});
      for (auto family : cfg.families)
        for (int N : cfg.dims) cells.push_back({datasets.size() - 1, false, family, N});
    }

  std::vector<ExperimentData> data(datasets.size());
  std::vector<SnapshotDataset> snapshots(datasets.size());
  parallel_for(datasets.size(), cfg.workers, [&](std::size_t k) {
    data[k] = make_experiment_data(datasets[k].first, cfg.simulation, cfg.eval_trajectories,
                                   datasets[k].second);
    snapshots[k] = build_snapshot_dataset(data[k].train, DataMode::DiscretePairs);
  });

  std::vector<CompareRow> rows(cells.size());
  parallel_for(cells.size(), cfg.workers, [&](std::size_t c) {
    const Cell& cell = cells[c];
    const auto& [system, seed] = datasets[cell.data];
    CompareRow row;
    row.system = system;
    row.seed = seed;
    row.n_steps = cfg.n_steps;
    row.N = cell.N;
    if (cell.dmd) {
      row.dictionary = "dmd";
      row.error = n_step_error(dmd_baseline(snapshots[cell.data]), data[cell.data].eval, cfg.n_steps);
    } else {
      row.dictionary = std::string(to_string(cell.family));
      TrainConfig train = cfg.train;
      train.seed = seed;
      const SgdResult fit = sgd_fit(snapshots[cell.data], cell.family, cell.N, train);
      row.error = n_step_error(fit.model, data[cell.data].eval, cfg.n_steps);
    }
    rows[c] = row;
  });
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<MedianRow> median_errors(const std::vector<CompareRow>& rows) {
  std::vector<std::tuple<SystemId, std::string, int>> order;
  std::map<std::tuple<SystemId, std::string, int>, std::vector<double>> groups;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.system, r.dictionary, r.N);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(r.error);
  }
  std::vector<MedianRow> out;
  for (const auto& key : order) {
    const auto& v = groups[key];
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), median(v),
                   static_cast<int>(v.size())});
  }
  return out;
}

}  // namespace augsill
